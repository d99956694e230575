"""
True phase functions θ_ν, φ_ν, ψ_{ν,η} and the zeros they locate

The continuous branch is obtained by marching a grid from a point where the
principal value of atan2 is still the true phase, refining every interval
until the wrapped atan2 increment agrees with the trapezoid integral of the
exact phase derivative (a Wronskian). The result is re-anchored to
atan2 + 2πm, so the accuracy is that of the Bessel values themselves.
"""

import logging
import math
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from phasebound.errors import DomainError
from phasebound.families import (
    BoundStatus,
    FamilyTag,
    PhaseKind,
    ZeroFamily,
    is_convention_zero,
    phase_target,
)
from phasebound.special_oracle import bessel_eval_many, check_envelope, in_envelope

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
LINEAR_STEP = 0.25
GEOMETRIC_POINTS = 64
MAX_STEP = 0.25 * math.pi
BRANCH_TOL = 0.125 * math.pi
MAX_REFINE = 40


@dataclass(frozen=True)
class PhasePoint:
    """Unwound phase at x; winding counts zeros of both components in (0, x]"""
    x: float
    value: float
    winding: int
    degraded: bool = False


def _check_args(kind: PhaseKind, nu: float, x: float, eta: Optional[float]) -> None:
    if not math.isfinite(nu) or nu < 0.0:
        raise DomainError(f"order must be finite and >= 0, got {nu}")
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"argument must be finite and > 0, got {x}")
    if kind is PhaseKind.PSI:
        if eta is None or not (0.0 < eta <= nu):
            raise DomainError(f"psi phase needs nu >= eta > 0, got nu={nu}, eta={eta}")


def _start(nu: float) -> float:
    """A point below the first zero of both components, where values stay finite"""
    if nu <= 1.0:
        return 1e-6
    if nu <= 50.0:
        return 1e-2 * nu
    return 0.5 * nu


def _components(kind: PhaseKind, nu: float, eta: Optional[float], xs):
    """(a, b) whose angle is the phase; positive rescalings are dropped"""
    j, y, jp, yp = bessel_eval_many(nu, xs)
    if kind is PhaseKind.THETA:
        return j, y
    if kind is PhaseKind.PHI:
        return jp, yp
    return xs * jp - eta * j, xs * yp - eta * y


def _turning_point(kind: PhaseKind, nu: float, eta: Optional[float]) -> float:
    if kind is PhaseKind.PHI:
        return nu
    if kind is PhaseKind.PSI:
        return math.sqrt(max((nu - eta) * (nu + eta), 0.0))
    return 0.0


def _rate(kind: PhaseKind, nu: float, eta: Optional[float], xs, a, b):
    """Exact phase derivative from the Wronskian"""
    with np.errstate(over="ignore", invalid="ignore"):
        radius2 = a * a + b * b
        if kind is PhaseKind.THETA:
            return 2.0 / (np.pi * xs * radius2)
        if kind is PhaseKind.PHI:
            return 2.0 * (xs - nu) * (xs + nu) / (np.pi * xs ** 3 * radius2)
        mu = _turning_point(kind, nu, eta)
        return 2.0 * (xs - mu) * (xs + mu) / (np.pi * xs * radius2)


def _wrap(delta):
    return (delta + np.pi) % TWO_PI - np.pi


def _initial_grid(nu: float, x_end: float) -> np.ndarray:
    x0 = _start(nu)
    if x_end <= x0:
        return np.array([x_end])
    x_switch = min(max(nu, 1.0), x_end)
    grid = np.geomspace(x0, x_switch, GEOMETRIC_POINTS)
    if x_end > x_switch:
        count = int(math.ceil((x_end - x_switch) / LINEAR_STEP))
        grid = np.concatenate([grid, np.linspace(x_switch, x_end, count + 1)[1:]])
    return grid


def march(kind: PhaseKind, nu: float, x_end: float, eta: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Grid and unwound phase values from the start point up to x_end"""
    xs = _initial_grid(nu, x_end)
    a, b = _components(kind, nu, eta, xs)

    for _ in range(MAX_REFINE):
        if xs.size == 1:
            break
        rate = _rate(kind, nu, eta, xs, a, b)
        raw = np.arctan2(b, a)
        h = np.diff(xs)
        increment = _wrap(np.diff(raw))
        predicted = 0.5 * h * (rate[:-1] + rate[1:])
        peak = h * np.maximum(np.abs(rate[:-1]), np.abs(rate[1:]))
        with np.errstate(invalid="ignore"):
            bad = (peak > MAX_STEP) | (np.abs(increment - predicted) > BRANCH_TOL)
        if not bad.any():
            break
        mids = 0.5 * (xs[:-1][bad] + xs[1:][bad])
        a_mid, b_mid = _components(kind, nu, eta, mids)
        where = np.searchsorted(xs, mids)
        xs = np.insert(xs, where, mids)
        a = np.insert(a, where, a_mid)
        b = np.insert(b, where, b_mid)
    else:
        logger.warning("phase march for %s nu=%g did not settle below x=%g", kind.value, nu, x_end)

    raw = np.arctan2(b, a)
    if xs.size == 1:
        return xs, raw
    unwound = raw[0] + np.concatenate(([0.0], np.cumsum(_wrap(np.diff(raw)))))
    turns = np.round((unwound - raw) / TWO_PI)
    return xs, raw + TWO_PI * turns


def _first_level(kind: PhaseKind, nu: float, eta: Optional[float]) -> int:
    """Index n of the first level nπ/2 that is crossed at some x > 0"""
    if kind is PhaseKind.THETA:
        return 0
    if kind is PhaseKind.PHI:
        return 2 if nu == 0.0 else 1
    return 2 if eta == nu else 1


def _winding(kind: PhaseKind, nu: float, eta: Optional[float], value: float) -> int:
    return max(0, math.floor(2.0 * value / math.pi) - _first_level(kind, nu, eta) + 1)


def _phase_point(kind: PhaseKind, nu: float, x: float, eta: Optional[float], strict: bool) -> PhasePoint:
    _check_args(kind, nu, x, eta)
    degraded = check_envelope(nu, x, strict)
    _, values = march(kind, nu, x, eta)
    value = float(values[-1])
    return PhasePoint(x=x, value=value, winding=_winding(kind, nu, eta, value), degraded=degraded)


def phase_theta(nu: float, x: float, strict: bool = False) -> PhasePoint:
    """θ_ν(x), the continuous angle of (J_ν, Y_ν) with θ_ν(0⁺) = −π/2"""
    return _phase_point(PhaseKind.THETA, nu, x, None, strict)


def phase_phi(nu: float, x: float, strict: bool = False) -> PhasePoint:
    """φ_ν(x), the continuous angle of (J′_ν, Y′_ν) with φ_ν(0⁺) = π/2"""
    return _phase_point(PhaseKind.PHI, nu, x, None, strict)


def phase_psi(nu: float, eta: float, x: float, strict: bool = False) -> PhasePoint:
    """ψ_{ν,η}(x), the angle of (U′, W′) for U = x^{−η}J_ν, W = x^{−η}Y_ν, ψ(0⁺) = π/2"""
    return _phase_point(PhaseKind.PSI, nu, x, eta, strict)


def phase_value(kind: PhaseKind, nu: float, x: float, eta: Optional[float] = None, strict: bool = False) -> float:
    return _phase_point(kind, nu, x, eta, strict).value


def phase_derivative(kind: PhaseKind, nu: float, x: float, eta: Optional[float] = None) -> float:
    """θ′ = 2/(πxM²), φ′ = 2(x²−ν²)/(πx³N²), ψ′ = 2(x²−μ²)/(πx^{2η+3}L²)"""
    _check_args(kind, nu, x, eta)
    xs = np.array([x])
    a, b = _components(kind, nu, eta, xs)
    return float(_rate(kind, nu, eta, xs, a, b)[0])


def phase_asymptotic(kind: PhaseKind, nu: float, x: float, eta: Optional[float] = None) -> float:
    """Four-term large-x expansion of the exact phase"""
    nu2 = nu * nu
    if kind is PhaseKind.THETA:
        return (x - math.pi * (2 * nu + 1) / 4 + (4 * nu2 - 1) / (8 * x)
                + (4 * nu2 - 1) * (4 * nu2 - 25) / (384 * x ** 3))
    if kind is PhaseKind.PHI:
        return (x - math.pi * (2 * nu - 1) / 4 + (4 * nu2 + 3) / (8 * x)
                + (16 * nu2 * nu2 + 184 * nu2 - 63) / (384 * x ** 3))
    if eta is None:
        raise DomainError("psi expansion needs eta")
    e = eta
    cubic = 16 * nu2 * nu2 + (192 * e + 184) * nu2 - 63 - 128 * e ** 3 - 192 * e * e - 144 * e
    return x - math.pi * (2 * nu - 1) / 4 + (4 * nu2 + 3 + 8 * e) / (8 * x) + cubic / (384 * x ** 3)


def tau_star(nu: float) -> float:
    """τ*_ν = θ_ν(ν)/π + 1/2, the largest τ with c_{ν,τ,1} ≤ ν"""
    if not math.isfinite(nu) or nu < 0.0:
        raise DomainError(f"order must be finite and >= 0, got {nu}")
    if nu == 0.0:
        return 0.0
    return phase_theta(nu, nu).value / math.pi + 0.5


# -- true zeros --------------------------------------------------------------

def _family_function(family: ZeroFamily, nu: float, target: float):
    """G(x) = b·cos T − a·sin T, which vanishes exactly where the phase is T mod π"""
    kind = family.phase_kind
    eta = family.eta
    cos_t, sin_t = math.cos(target), math.sin(target)

    def g(x: float) -> float:
        a, b = _components(kind, nu, eta, x)
        return float(b) * cos_t - float(a) * sin_t

    return g


def zero_status(family: ZeroFamily, nu: float, k: int) -> BoundStatus:
    """CONVENTION for the two zeros placed at the origin, VALID otherwise"""
    return BoundStatus.CONVENTION if is_convention_zero(family, nu, k) else BoundStatus.VALID


ZERO_CACHE_SIZE = 512
_zero_cache: "OrderedDict[Tuple[ZeroFamily, float], Tuple[float, ...]]" = OrderedDict()
_zero_cache_lock = threading.Lock()


def _zeros(family: ZeroFamily, nu: float, k_max: int) -> Tuple[float, ...]:
    """First k_max zeros; one list per (family, ν), extended by doubling when too short"""
    key = (family, nu)
    with _zero_cache_lock:
        cached = _zero_cache.get(key, ())
        if len(cached) >= k_max:
            _zero_cache.move_to_end(key)
            return cached[:k_max]

    zeros = _march_zeros(family, nu, max(k_max, 2 * len(cached)))
    with _zero_cache_lock:
        if len(_zero_cache.get(key, ())) < len(zeros):
            _zero_cache[key] = zeros
        _zero_cache.move_to_end(key)
        while len(_zero_cache) > ZERO_CACHE_SIZE:
            _zero_cache.popitem(last=False)
    return zeros[:k_max]


def _march_zeros(family: ZeroFamily, nu: float, k_max: int) -> Tuple[float, ...]:
    kind = family.phase_kind
    eta = family.eta
    targets = [phase_target(family, k) for k in range(1, k_max + 1)]
    x_end = targets[-1] + math.pi * (2.0 * nu + 1.0) / 4.0 + TWO_PI + 1.0

    while True:
        xs, values = march(kind, nu, x_end, eta)
        if values[-1] > targets[-1] + math.pi:
            break
        x_end *= 2.0

    zeros = []
    for k, target in enumerate(targets, start=1):
        if is_convention_zero(family, nu, k):
            zeros.append(0.0)
            continue
        above = np.nonzero((values[:-1] < target) & (values[1:] >= target))[0]
        if above.size == 0:
            raise DomainError(f"{family.label()} zero {k} for nu={nu} lies below the oracle grid")
        i = int(above[0])
        lo, hi = float(xs[i]), float(xs[i + 1])
        g = _family_function(family, nu, target)
        if values[i + 1] == target:
            zeros.append(hi)
            continue
        zeros.append(optimize.brentq(g, lo, hi, xtol=1e-300, rtol=4.0 * np.finfo(float).eps, maxiter=200))
    return tuple(zeros)


def true_zeros(family: ZeroFamily, nu: float, k_max: int, strict: bool = False) -> Tuple[float, ...]:
    """First k_max zeros of the family in the enumeration the enclosures use"""
    family.check_order(nu)
    if not isinstance(k_max, int) or k_max < 1:
        raise DomainError(f"k_max must be a positive integer, got {k_max!r}")
    zeros = _zeros(family, nu, k_max)
    check_envelope(nu, max(zeros[-1], 1.0), strict)
    return zeros


def true_zero(family: ZeroFamily, nu: float, k: int, strict: bool = False) -> float:
    """The k-th zero of the family; 0.0 for the CONVENTION cases"""
    return true_zeros(family, nu, k, strict)[-1]


def true_count(family: ZeroFamily, nu: float, lam: float) -> int:
    """Number of family zeros in [0, λ], read off the exact phase (J and J′ only)"""
    family.check_order(nu)
    if not math.isfinite(lam) or lam <= 0.0:
        raise DomainError(f"lambda must be finite and > 0, got {lam}")
    if family.tag is FamilyTag.J:
        value = phase_theta(nu, lam).value
    elif family.tag is FamilyTag.JPRIME:
        value = phase_phi(nu, lam).value
    else:
        raise DomainError(f"counting is defined for J and JPRIME, got {family.label()}")
    return max(0, math.floor(value / math.pi + 0.5))


def reference_zeros(family: ZeroFamily, nu: float, k_values: Sequence[int], strict: bool = False) -> Dict[int, float]:
    """Oracle zeros for each k; NaN (with a warning) where the oracle leaves its accuracy envelope"""
    family.check_order(nu)
    if not k_values or min(k_values) < 1:
        raise DomainError(f"zero indices must be positive, got {list(k_values)}")
    k_max = max(k_values)
    if not in_envelope(nu, 1.0):
        check_envelope(nu, 1.0, strict)
        logger.warning("no reference zeros for %s at nu=%g: order outside the oracle envelope",
                       family.label(), nu)
        return {k: math.nan for k in k_values}

    zeros = _zeros(family, nu, k_max)
    result: Dict[int, float] = {}
    for k in k_values:
        z = zeros[k - 1]
        if z > 0.0 and not in_envelope(nu, z):
            check_envelope(nu, z, strict)
            logger.warning("reference zero %s k=%d at nu=%g lies beyond the oracle envelope (x=%.6g)",
                           family.label(), k, nu, z)
            result[k] = math.nan
        else:
            result[k] = z
    return result
