"""
Reference evaluator for Bessel and Airy functions

J, Y and their derivatives come from scipy.special (AMOS and Cephes), which
switch between ascending series, continued fractions and large-argument
asymptotics internally. This module adds domain checks, the accuracy envelope
flag and the negative Airy zeros.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np
from scipy import special

from phasebound.errors import AccuracyDegraded, DomainError

logger = logging.getLogger(__name__)

MAX_ORDER = 50.0
MAX_ARGUMENT = 1.0e4
AIRY_RANGE = 20.0
MAX_AIRY_INDEX = 10**6

# T(t) and U(t) series coefficients for a_k and a'_k seeds
_AIRY_ZERO_SERIES = (1.0, 5.0 / 48.0, -5.0 / 36.0, 77125.0 / 82944.0,
                     -108056875.0 / 6967296.0)
_AIRY_DERIV_ZERO_SERIES = (1.0, -7.0 / 48.0, 35.0 / 288.0, -181223.0 / 207360.0,
                           18683371.0 / 1244160.0)


@dataclass(frozen=True)
class BesselQuad:
    """J_ν(x), Y_ν(x), J′_ν(x), Y′_ν(x) at one point"""
    j: float
    y: float
    jp: float
    yp: float
    degraded: bool = False

    def wronskian_residual(self, x: float) -> float:
        """Relative residual of J·Y′ − J′·Y = 2/(πx)"""
        scale = abs(self.j * self.yp) + abs(self.jp * self.y) + 2.0 / (math.pi * x)
        return abs(self.j * self.yp - self.jp * self.y - 2.0 / (math.pi * x)) / scale


@dataclass(frozen=True)
class AiryPair:
    ai: float
    aip: float


def in_envelope(nu: float, x: float) -> bool:
    """Whether (ν, x) lies inside the guaranteed-accuracy envelope"""
    return 0.0 <= nu <= MAX_ORDER and 0.0 < x <= MAX_ARGUMENT


def check_envelope(nu: float, x: float, strict: bool = False) -> bool:
    """Return the degraded flag for (ν, x); raise in strict mode"""
    if in_envelope(nu, x):
        return False
    if strict:
        raise AccuracyDegraded(
            f"(nu={nu}, x={x}) outside the accuracy envelope nu <= {MAX_ORDER:g}, x <= {MAX_ARGUMENT:g}",
            nu=nu, x=x)
    logger.debug("accuracy degraded at nu=%g x=%g", nu, x)
    return True


def _check_order(nu: float) -> None:
    if not math.isfinite(nu) or nu < 0.0:
        raise DomainError(f"order must be finite and >= 0, got {nu}")


def bessel_eval(nu: float, x: float, strict: bool = False) -> BesselQuad:
    """Evaluate J_ν, Y_ν, J′_ν, Y′_ν at x > 0"""
    _check_order(nu)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"argument must be finite and > 0, got {x}")
    degraded = check_envelope(nu, x, strict)

    return BesselQuad(
        j=float(special.jv(nu, x)),
        y=float(special.yv(nu, x)),
        jp=float(special.jvp(nu, x)),
        yp=float(special.yvp(nu, x)),
        degraded=degraded,
    )


def bessel_eval_many(nu: float, xs: Sequence[float]) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised J, Y, J′, Y′ over an array of positive arguments"""
    _check_order(nu)
    xs = np.asarray(xs, dtype=float)
    if xs.size and (not np.all(np.isfinite(xs)) or np.min(xs) <= 0.0):
        raise DomainError("arguments must be finite and > 0")
    return special.jv(nu, xs), special.yv(nu, xs), special.jvp(nu, xs), special.yvp(nu, xs)


def airy_eval(x: float) -> AiryPair:
    """Ai(x) and Ai′(x) for −20 ≤ x ≤ 20"""
    if not math.isfinite(x) or abs(x) > AIRY_RANGE:
        raise DomainError(f"Airy argument must lie in [-{AIRY_RANGE:g}, {AIRY_RANGE:g}], got {x}")
    ai, aip, _, _ = special.airy(x)
    return AiryPair(ai=float(ai), aip=float(aip))


def _asymptotic_sum(t: float, coefficients: Sequence[float]) -> float:
    """t^{2/3}·Σ c_n t^{−2n}, truncated once terms stop decreasing"""
    total = coefficients[0]
    previous = abs(coefficients[0])
    inv_t2 = 1.0 / (t * t)
    power = 1.0
    for c in coefficients[1:]:
        power *= inv_t2
        term = c * power
        if abs(term) >= previous:
            break
        total += term
        previous = abs(term)
    return t ** (2.0 / 3.0) * total


def _check_airy_index(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or not (1 <= k <= MAX_AIRY_INDEX):
        raise DomainError(f"Airy zero index must be an integer in [1, {MAX_AIRY_INDEX}], got {k!r}")


def _newton_airy(seed: float, derivative_zero: bool) -> float:
    """At most five Newton steps on Ai (or Ai′, using Ai″ = x·Ai)"""
    x = seed
    for _ in range(5):
        ai, aip, _, _ = special.airy(x)
        if derivative_zero:
            f, df = aip, x * ai
        else:
            f, df = ai, aip
        if f == 0.0 or df == 0.0:
            break
        step = f / df
        x -= step
        if abs(step) <= 1e-15 * abs(x):
            break
    return float(x)


@lru_cache(maxsize=4096)
def airy_zero(k: int) -> float:
    """k-th negative zero a_k of Ai"""
    _check_airy_index(k)
    t = 3.0 * math.pi * (4 * k - 1) / 8.0
    return _newton_airy(-_asymptotic_sum(t, _AIRY_ZERO_SERIES), derivative_zero=False)


@lru_cache(maxsize=4096)
def airy_deriv_zero(k: int) -> float:
    """k-th negative zero a′_k of Ai′"""
    _check_airy_index(k)
    t = 3.0 * math.pi * (4 * k - 3) / 8.0
    return _newton_airy(-_asymptotic_sum(t, _AIRY_DERIV_ZERO_SERIES), derivative_zero=True)
