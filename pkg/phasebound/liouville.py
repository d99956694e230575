"""
Liouville potentials and the Sturm comparison checks

For an increasing phase-like f the function cos(f − πt)/√f′ solves
F″ + 𝒱_f F = 0 with 𝒱_f = f′² + f‴/(2f′) − (3/4)(f″/f′)². An envelope h
dominates an exact phase g on (a, ∞) when 𝒱_g − 𝒱_h keeps a sign there (C₂)
and x^s·(h − g) has a finite positive limit (C′₃). This module evaluates the
closed-form potentials, the polynomial identities their differences satisfy,
and grid checks of both conditions.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from phasebound.envelopes import (
    EnvelopeKind,
    critical_points,
    envelope_derivative,
    eval_envelope,
    mu_of,
    p_poly,
    r_poly,
)
from phasebound.errors import DegenerateDerivative, DomainError, SturmConditionError
from phasebound.families import PhaseKind
from phasebound.phase_oracle import phase_value

logger = logging.getLogger(__name__)

DEFAULT_GRID_COUNT = 512
EDGE_MARGIN = 1e-3
MIN_RIGHT = 100.0
TAIL_X = 1000.0
TAIL_TOLERANCE = 0.2
CLOSED_SLACK = 1e-9


class PotentialKind(Enum):
    V_THETA = "V_THETA"
    V_PHI = "V_PHI"
    V_PSI = "V_PSI"
    V_THETA_UPPER = "V_THETA_UPPER"
    V_THETA_LOWER = "V_THETA_LOWER"
    V_PHI_UPPER = "V_PHI_UPPER"
    V_PSI_LOWER = "V_PSI_LOWER"


# φ̲ differs from θ̃ by a constant, so they share a potential
ENVELOPE_POTENTIAL: Dict[EnvelopeKind, PotentialKind] = {
    EnvelopeKind.THETA_UPPER: PotentialKind.V_THETA_UPPER,
    EnvelopeKind.THETA_LOWER: PotentialKind.V_THETA_LOWER,
    EnvelopeKind.PHI_LOWER: PotentialKind.V_THETA_UPPER,
    EnvelopeKind.PHI_UPPER: PotentialKind.V_PHI_UPPER,
    EnvelopeKind.PSI_LOWER: PotentialKind.V_PSI_LOWER,
}


class ComparisonPair(Enum):
    THETA_UPPER_VS_EXACT = "THETA_UPPER_VS_EXACT"
    THETA_LOWER_VS_EXACT = "THETA_LOWER_VS_EXACT"
    PHI_LOWER_VS_EXACT = "PHI_LOWER_VS_EXACT"
    PHI_UPPER_VS_EXACT = "PHI_UPPER_VS_EXACT"
    PSI_LOWER_VS_EXACT = "PSI_LOWER_VS_EXACT"


@dataclass(frozen=True)
class _PairSpec:
    envelope: EnvelopeKind
    phase: PhaseKind
    exact_potential: PotentialKind
    is_upper: bool
    tail_power: int
    tail_constant: float


_PAIRS: Dict[ComparisonPair, _PairSpec] = {
    ComparisonPair.THETA_UPPER_VS_EXACT: _PairSpec(
        EnvelopeKind.THETA_UPPER, PhaseKind.THETA, PotentialKind.V_THETA, True, 1, 1.0 / 8.0),
    ComparisonPair.THETA_LOWER_VS_EXACT: _PairSpec(
        EnvelopeKind.THETA_LOWER, PhaseKind.THETA, PotentialKind.V_THETA, False, 3, 25.0 / 384.0),
    ComparisonPair.PHI_LOWER_VS_EXACT: _PairSpec(
        EnvelopeKind.PHI_LOWER, PhaseKind.PHI, PotentialKind.V_PHI, False, 1, 3.0 / 8.0),
    ComparisonPair.PHI_UPPER_VS_EXACT: _PairSpec(
        EnvelopeKind.PHI_UPPER, PhaseKind.PHI, PotentialKind.V_PHI, True, 3, 21.0 / 128.0),
    ComparisonPair.PSI_LOWER_VS_EXACT: _PairSpec(
        EnvelopeKind.PSI_LOWER, PhaseKind.PSI, PotentialKind.V_PSI, False, 1, 3.0 / 8.0),
}


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    count: int
    spacing: str = "log"

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.x_min, self.x_max, self.count)
        return np.linspace(self.x_min, self.x_max, self.count)


@dataclass(frozen=True)
class SturmReport:
    """Minimum of the signed potential difference over a grid

    passed ⇔ min_diff > 0 and, at grid points x ≥ 2ν + 2, the direct closed-form
    difference never drops below -CLOSED_SLACK times the potentials it subtracts.
    closed_min is NaN when no grid point reaches that far.
    """
    pair: ComparisonPair
    nu: float
    eta: Optional[float]
    min_diff: float
    argmin: float
    grid: GridSpec
    passed: bool
    closed_min: float = float("nan")


# -- potentials ---------------------------------------------------------------

def potential_numeric(f_value: Callable[[float], float], x: float, step: Optional[float] = None) -> float:
    """𝒱_f(x) from seven-point central differences"""
    h = step if step is not None else max(1e-3, 1e-3 * abs(x))
    f = [f_value(x + i * h) for i in range(-3, 4)]
    fm3, fm2, fm1, f0, fp1, fp2, fp3 = f

    d1 = (-fp3 + 9.0 * fp2 - 45.0 * fp1 + 45.0 * fm1 - 9.0 * fm2 + fm3) / (60.0 * h)
    if not d1 > 0.0:
        raise DegenerateDerivative(f"estimated f'({x}) = {d1} is not positive")
    d2 = (2.0 * fp3 - 27.0 * fp2 + 270.0 * fp1 - 490.0 * f0 + 270.0 * fm1 - 27.0 * fm2 + 2.0 * fm3) / (180.0 * h * h)
    d3 = (-fp3 + 8.0 * fp2 - 13.0 * fp1 + 13.0 * fm1 - 8.0 * fm2 + fm3) / (8.0 * h ** 3)
    return d1 * d1 + 0.5 * d3 / d1 - 0.75 * (d2 / d1) ** 2


def _even_poly(terms: Sequence[Tuple[int, float]], x: float) -> float:
    """Σ c·x^p with compensated summation"""
    return math.fsum(c * x ** p for p, c in terms)


def _q1(nu: float, x: float) -> float:
    n2 = nu * nu
    n4, n6, n8 = n2 * n2, n2 ** 3, n2 ** 4
    return _even_poly((
        (24, 4096.0),
        (22, -2048.0 * (24 * n2 - 1)),
        (20, 128.0 * (2112 * n4 - 128 * n2 + 15)),
        (18, -32.0 * (28160 * n6 - 1760 * n4 - 584 * n2 - 1)),
        (16, 2027520 * n8 - 107520 * n6 - 117376 * n4 + 704 * n2 + 1),
        (14, -16.0 * n2 * (202752 * n8 - 7680 * n6 - 13088 * n4 + 223 * n2 - 1)),
        (12, 16.0 * n4 * (236544 * n8 - 5376 * n6 - 5000 * n4 + 585 * n2 + 6)),
        (10, -16.0 * n6 * (202752 * n8 - 2688 * n6 + 11440 * n4 + 935 * n2 - 16)),
        (8, 16.0 * n8 * (126720 * n8 - 1920 * n6 + 15272 * n4 + 823 * n2 + 16)),
        (6, -128.0 * n2 ** 6 * (7040 * n6 - 240 * n4 + 808 * n2 + 43)),
        (4, 256.0 * (1056 * n6 - 80 * n4 + 17 * n2 + 3) * n2 ** 7),
        (2, -1024.0 * n2 ** 9 * (48 * n4 - 7 * n2 - 5)),
        (0, 1024.0 * (4 * n2 - 1) * n2 ** 11),
    ), x)


def _q2(nu: float, x: float) -> float:
    n2 = nu * nu
    inner = math.fsum((8 * x ** 6, (1 - 24 * n2) * x ** 4, 4 * n2 * (6 * n2 + 1) * x * x, -8 * n2 ** 3))
    return 64.0 * x * x * ((x - nu) * (x + nu)) ** 5 * inner * inner


def _q3(nu: float, x: float) -> float:
    n2 = nu * nu
    n4, n6, n8 = n2 * n2, n2 ** 3, n2 ** 4
    return _even_poly((
        (24, 4096.0),
        (22, -6144.0 * (8 * n2 + 1)),
        (20, 128.0 * (2112 * n4 + 320 * n2 - 9)),
        (18, -32.0 * (28160 * n6 + 2848 * n4 + 760 * n2 + 27)),
        (16, 3.0 * (675840 * n8 - 3072 * n6 + 46208 * n4 + 448 * n2 + 27)),
        (14, -16.0 * n2 * (202752 * n8 - 29184 * n6 + 16352 * n4 + 575 * n2 - 27)),
        (12, 16.0 * n4 * (236544 * n8 - 69888 * n6 + 10360 * n4 + 1657 * n2 + 54)),
        (10, -48.0 * n6 * (67584 * n8 - 29568 * n6 - 1904 * n4 + 533 * n2 - 16)),
        (8, 16.0 * n8 * (126720 * n8 - 69504 * n6 - 11480 * n4 + 479 * n2 + 16)),
        (6, -128.0 * n2 ** 6 * (7040 * n6 - 4272 * n4 - 632 * n2 + 5)),
        (4, 768.0 * n2 ** 7 * (352 * n6 - 208 * n4 - n2 + 1)),
        (2, -1024.0 * n2 ** 9 * (48 * n4 - 23 * n2 + 5)),
        (0, 1024.0 * (4 * n2 - 1) * n2 ** 11),
    ), x)


def _q4(nu: float, x: float) -> float:
    p = p_poly(nu, x)
    return 64.0 * x * x * ((x - nu) * (x + nu)) ** 5 * p * p


def _q5(mu: float, eta: float, x: float) -> float:
    m2 = mu * mu
    m4, m6 = m2 * m2, m2 ** 3
    e = eta
    e2, e3, e4, e5, e6, e7, e8 = (e ** i for i in range(2, 9))
    c12 = 3 * e4 + 12 * e3 + e2 * (28 * m2 + 9) + 6 * e * (8 * m2 - 1) + (56 * m2 - 3) * m2
    c10 = (2 * e6 + 12 * e5 + 12 * e4 * (3 * m2 + 2) + 8 * e3 * (15 * m2 + 2)
           + 14 * e2 * (12 * m2 + 5) * m2 + 12 * e * (20 * m2 - 1) * m2 + (224 * m2 - 31) * m4)
    c8 = (e8 + 8 * e7 + 8 * e6 * (5 * m2 + 3) + 32 * e5 * (6 * m2 + 1) + 2 * e4 * (180 * m4 + 145 * m2 + 8)
          + 48 * e3 * (20 * m2 + 3) * m2 + 4 * e2 * (280 * m4 + 99 * m2 + 6) * m2
          + 8 * e * (160 * m2 + 13) * m4 + 20 * (56 * m2 - 13) * m6)
    c6 = (4 * e8 + 24 * e7 + 16 * e6 * (5 * m2 + 3) + 32 * e5 * (9 * m2 + 1) + e4 * (480 * m2 + 293) * m2
          + e3 * (960 * m4 + 76 * m2) + 4 * e2 * (280 * m4 + 56 * m2 + 9) * m2
          + 120 * e * (8 * m6 + m4) + 56 * (16 * m2 - 5) * m6)
    c4 = (6 * e8 + 24 * e7 + 8 * e6 * (10 * m2 + 3) + 192 * e5 * m2 + 9 * e4 * (40 * m2 + 11) * m2
          + 24 * e3 * (20 * m2 - 1) * m2 + 4 * e2 * (168 * m4 + 4 * m2 + 3) * m2
          + 24 * e * (16 * m2 - 1) * m4 + 32 * (14 * m2 - 5) * m6)
    c2 = (4 * e8 + 8 * e7 + 40 * e6 * m2 + 48 * e5 * m2 + e4 * (144 * m2 - 1) * m2
          + 4 * e3 * (24 * m2 - 5) * m2 + 8 * e2 * (28 * m2 - 3) * m4
          + 8 * e * (8 * m2 - 5) * m4 + 4 * (32 * m2 - 11) * m6)
    c0 = m2 ** 4 * (e4 + 4 * e2 * m2 + 4 * m4 - m2) * (e2 + 2 * m2) ** 2
    return _even_poly((
        (16, 16.0),
        (14, -32.0 * (e2 + 2 * e + 4 * m2)),
        (12, 8.0 * c12),
        (10, -4.0 * c10),
        (8, c8),
        (6, -m2 * c6),
        (4, m4 * c4),
        (2, -m6 * c2),
        (0, c0),
    ), x)


def _psi_lower_numerator(mu: float, eta: float, x: float) -> float:
    """2x⁴ − x²(η²+2η+4μ²) + μ²(η²+2μ²), the numerator of ψ̲′ up to 2xξ^{3/2}"""
    m2 = mu * mu
    return math.fsum((2 * x ** 4, -x * x * (eta * eta + 2 * eta + 4 * m2), m2 * (eta * eta + 2 * m2)))


def _q6(mu: float, eta: float, x: float) -> float:
    inner = _psi_lower_numerator(mu, eta, x)
    return 4.0 * ((x - mu) * (x + mu)) ** 3 * x * x * inner * inner


def _potential_edge(kind: PotentialKind, nu: float, eta: Optional[float]) -> float:
    if kind is PotentialKind.V_THETA:
        return 0.0
    if kind in (PotentialKind.V_PSI, PotentialKind.V_PSI_LOWER):
        if eta is None or not (0.0 < eta <= nu):
            raise DomainError(f"{kind.value} needs nu >= eta > 0, got nu={nu}, eta={eta}")
        return mu_of(nu, eta)
    return nu


def potential_closed(kind: PotentialKind, nu: float, x: float, eta: Optional[float] = None) -> float:
    """Closed-form potential of an exact phase or an envelope"""
    if not math.isfinite(nu) or nu < 0.0:
        raise DomainError(f"order must be finite and >= 0, got {nu}")
    edge = _potential_edge(kind, nu, eta)
    if not math.isfinite(x) or not (x > edge):
        raise DomainError(f"{kind.value} needs x > {edge}, got x={x}")

    x2 = x * x
    base = 1.0 - (nu * nu - 0.25) / x2
    if kind is PotentialKind.V_THETA:
        return base
    if kind is PotentialKind.V_PHI:
        xi = (x - nu) * (x + nu)
        return base - (2.0 * nu * nu + x2) / (xi * xi)
    if kind is PotentialKind.V_PSI:
        xi = (x - edge) * (x + edge)
        return base + 2.0 * (1.0 - eta) / xi - 3.0 * x2 / (xi * xi)
    if kind is PotentialKind.V_THETA_UPPER:
        n2 = nu * nu
        numerator = math.fsum((4 * x2 ** 3, -12 * n2 * x2 * x2, 6 * n2 * (2 * n2 - 1) * x2, -n2 * n2 * (4 * n2 - 1)))
        xi = (x - nu) * (x + nu)
        return numerator / (4.0 * x2 * xi * xi)

    if kind is PotentialKind.V_THETA_LOWER:
        numerator, denominator = _q1(nu, x), _q2(nu, x)
    elif kind is PotentialKind.V_PHI_UPPER:
        numerator, denominator = _q3(nu, x), _q4(nu, x)
    else:
        numerator, denominator = _q5(edge, eta, x), _q6(edge, eta, x)
    if denominator == 0.0:
        raise DomainError(f"{kind.value} is singular at x={x} for nu={nu}")
    return numerator / denominator


# -- polynomial identities -----------------------------------------------------

def delta_poly(nu: float, x: float) -> float:
    """δ_ν(x) = 4096x²(x²−ν²)¹⁰(φ̃′_ν)²(𝒱_φ − 𝒱_φ̃)"""
    n2 = nu * nu
    n4 = n2 * n2
    return _even_poly((
        (18, 4032.0),
        (16, 16.0 * (1208 * n2 + 27)),
        (14, -(158656 * n4 + 2640 * n2 + 81)),
        (12, 16.0 * n2 * (20272 * n4 + 701 * n2 - 27)),
        (10, -16.0 * n4 * (12796 * n4 + 1415 * n2 + 54)),
        (8, -64.0 * n2 ** 3 * (2338 * n4 - 337 * n2 + 12)),
        (6, 64.0 * n4 * n4 * (4543 * n4 - 164 * n2 - 4)),
        (4, -3584.0 * n2 ** 6 * (41 * n2 - 1)),
        (2, 1024.0 * n2 ** 7 * (17 * n2 - 1)),
        (0, 4096.0 * n2 ** 9),
    ), x)


def chi_poly(nu: float, chi: float) -> float:
    """64χ⁵(8χ³+χ²+6ν²χ+5ν⁴)²(𝒱_θ̲ − 𝒱_θ) at x = √(ν²+χ); every coefficient is positive"""
    n2 = nu * nu
    n4 = n2 * n2
    terms = (
        1600 * chi ** 9,
        (33984 * n2 + 16) * chi ** 8,
        (99008 * n4 + 784 * n2 + 1) * chi ** 7,
        (70720 * n4 + 1696 * n2 + 23) * n2 * chi ** 6,
        3 * (1376 * n2 + 71) * n4 * chi ** 5,
        (5200 * n2 + 1011) * n2 ** 3 * chi ** 4,
        5 * (400 * n2 + 519) * n4 * n4 * chi ** 3,
        3525 * n2 ** 5 * chi ** 2,
        2375 * n2 ** 6 * chi,
        625 * n2 ** 7,
    )
    return math.fsum(terms)


def potential_difference_identity(pair: ComparisonPair, nu: float, x: float, eta: Optional[float] = None) -> float:
    """The signed potential difference of a pair, from its polynomial identity"""
    n2 = nu * nu
    if pair is ComparisonPair.THETA_UPPER_VS_EXACT:
        xi = (x - nu) * (x + nu)
        return (x * x + 4.0 * n2) / (4.0 * xi * xi)
    if pair is ComparisonPair.PHI_LOWER_VS_EXACT:
        xi = (x - nu) * (x + nu)
        return (4.0 * n2 + 3.0 * x * x) / (4.0 * xi * xi)
    if pair is ComparisonPair.THETA_LOWER_VS_EXACT:
        chi = (x - nu) * (x + nu)
        factor = 8.0 * chi ** 3 + chi * chi + 6.0 * n2 * chi + 5.0 * n2 * n2
        return chi_poly(nu, chi) / (64.0 * chi ** 5 * factor * factor)
    if pair is ComparisonPair.PHI_UPPER_VS_EXACT:
        xi = (x - nu) * (x + nu)
        slope = envelope_derivative(EnvelopeKind.PHI_UPPER, nu, x)
        return delta_poly(nu, x) / (4096.0 * x * x * xi ** 10 * slope * slope)
    mu = mu_of(nu, eta)
    xi = (x - mu) * (x + mu)
    slope = envelope_derivative(EnvelopeKind.PSI_LOWER, nu, x, eta)
    return r_poly(mu, eta, x) / (16.0 * x ** 4 * xi ** 6 * slope * slope)


# -- Sturm checks ---------------------------------------------------------------

def pair_edge(pair: ComparisonPair, nu: float, eta: Optional[float] = None) -> float:
    """Left end of the interval on which a pair is compared"""
    if pair is ComparisonPair.PHI_UPPER_VS_EXACT:
        return critical_points(nu).x_star
    if pair is ComparisonPair.PSI_LOWER_VS_EXACT:
        if eta is None:
            raise DomainError("PSI_LOWER_VS_EXACT needs eta")
        return critical_points(nu, eta).x_at
    return nu


def default_grid(
    pair: ComparisonPair,
    nu: float,
    eta: Optional[float] = None,
    override: Optional[Mapping] = None,
) -> GridSpec:
    """Log grid from just above the pair's edge to max(100, 10ν)

    override may set count, spacing, x_max, edge_margin and min_right.
    """
    override = override or {}
    margin = float(override.get("edge_margin") or EDGE_MARGIN)
    edge = pair_edge(pair, nu, eta)
    x_min = edge * (1.0 + margin) if edge > 0.0 else margin
    x_max = float(override.get("x_max") or max(float(override.get("min_right") or MIN_RIGHT), 10.0 * nu))
    count = int(override.get("count") or DEFAULT_GRID_COUNT)
    spacing = override.get("spacing") or "log"
    if spacing not in ("log", "linear"):
        raise DomainError(f"grid spacing must be 'log' or 'linear', got {spacing!r}")
    if not x_max > x_min:
        raise DomainError(f"empty grid for {pair.value}: x_min={x_min}, x_max={x_max}")
    return GridSpec(x_min=x_min, x_max=x_max, count=count, spacing=spacing)


def _closed_terms(pair: ComparisonPair, nu: float, x: float, eta: Optional[float]) -> Tuple[float, float]:
    """(signed difference, |exact| + |envelope|) straight from potential_closed"""
    spec = _PAIRS[pair]
    exact = potential_closed(spec.exact_potential, nu, x, eta)
    envelope = potential_closed(ENVELOPE_POTENTIAL[spec.envelope], nu, x, eta)
    diff = exact - envelope if spec.is_upper else envelope - exact
    return diff, abs(exact) + abs(envelope)


def closed_difference(pair: ComparisonPair, nu: float, x: float, eta: Optional[float] = None) -> float:
    """Signed potential difference of a pair taken directly from potential_closed

    Loses digits near the turning point for large ν; the grid checks take the
    minimum from potential_difference_identity and use this only as a cross-check.
    """
    return _closed_terms(pair, nu, x, eta)[0]


def verify_c2(
    pair: ComparisonPair,
    nu: float,
    eta: Optional[float] = None,
    grid: Optional[GridSpec] = None,
) -> SturmReport:
    """Minimum of the potential difference over the grid, oriented so that it must be positive"""
    if pair not in _PAIRS:
        raise DomainError(f"unknown comparison pair {pair!r}")
    if grid is None:
        grid = default_grid(pair, nu, eta)
    edge = pair_edge(pair, nu, eta)
    if not grid.x_min > edge:
        raise DomainError(f"grid for {pair.value} starts at {grid.x_min}, not above {edge}")

    xs = grid.points()
    diffs = np.array([potential_difference_identity(pair, nu, float(x), eta) for x in xs])
    # the direct form cancels badly near the turning point; cross-check it away from there
    far = [float(x) for x in xs if x >= 2.0 * nu + 2.0]
    terms = np.array([_closed_terms(pair, nu, x, eta) for x in far]).reshape(-1, 2)
    closed, scales = terms[:, 0], terms[:, 1]
    i = int(np.argmin(diffs))
    report = SturmReport(
        pair=pair,
        nu=nu,
        eta=eta,
        min_diff=float(diffs[i]),
        argmin=float(xs[i]),
        grid=grid,
        passed=bool(diffs[i] > 0.0) and bool(np.all(closed > -CLOSED_SLACK * scales)),
        closed_min=float(closed.min()) if closed.size else math.nan,
    )
    if not report.passed:
        logger.warning("C2 check failed for %s nu=%g: min %.3e at x=%.6g, closed form min %.3e",
                       pair.value, nu, report.min_diff, report.argmin, report.closed_min)
    return report


def tail_constant(pair: ComparisonPair) -> Tuple[int, float]:
    """(s, c) with x^s·(h − g) → c"""
    spec = _PAIRS[pair]
    return spec.tail_power, spec.tail_constant


def verify_c3(
    pair: ComparisonPair,
    nu: float,
    eta: Optional[float] = None,
    x: float = TAIL_X,
    tolerance: float = TAIL_TOLERANCE,
    strict: bool = False,
) -> float:
    """Estimate of lim x^s·(h − g) at a single large x; raises when it misses the known constant"""
    spec = _PAIRS[pair]
    if spec.phase is PhaseKind.PSI and eta is None:
        raise DomainError("PSI_LOWER_VS_EXACT needs eta")
    envelope = eval_envelope(spec.envelope, nu, x, eta)
    exact = phase_value(spec.phase, nu, x, eta, strict)
    gap = envelope - exact if spec.is_upper else exact - envelope
    estimate = x ** spec.tail_power * gap

    if abs(estimate / spec.tail_constant - 1.0) > tolerance:
        raise SturmConditionError(
            f"{pair.value} tail at nu={nu}: x^{spec.tail_power}*(h-g) = {estimate:.6g}, "
            f"expected {spec.tail_constant:.6g}")
    return estimate
