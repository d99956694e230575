"""
Closed-form phase envelopes, their derivatives, the critical polynomials p_ν and
r_{μ,η}, and the critical points x★, z★, x#, x@.

All functions take scalar floats. Near the turning point x = ν the square root
√(x² − ν²) is formed as √((x − ν)(x + ν)) and arccos(ν/x) as atan2(s, ν), and
the difference s − ν·arccos(ν/x) switches to its odd Taylor series when s ≪ ν.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import optimize

from phasebound.errors import DomainError

logger = logging.getLogger(__name__)

QUARTER_PI = 0.25 * math.pi
HALF_PI = 0.5 * math.pi


class EnvelopeKind(Enum):
    THETA_UPPER = "THETA_UPPER"
    THETA_LOWER = "THETA_LOWER"
    THETA_LOWER_CLAMPED = "THETA_LOWER_CLAMPED"
    PHI_LOWER = "PHI_LOWER"
    PHI_UPPER = "PHI_UPPER"
    PHI_UPPER_CLAMPED = "PHI_UPPER_CLAMPED"
    PSI_LOWER = "PSI_LOWER"


@dataclass(frozen=True)
class CriticalPoints:
    """x★_ν, z★_ν and, when η is given, x#_{μ,η} and x@_{μ,η}"""
    x_star: float
    z_star: float
    x_hash: Optional[float] = None
    x_at: Optional[float] = None


def _check_order(nu: float) -> None:
    if not math.isfinite(nu) or nu < 0.0:
        raise DomainError(f"order must be finite and >= 0, got {nu}")


def _check_eta(nu: float, eta: Optional[float]) -> float:
    if eta is None or not math.isfinite(eta) or eta <= 0.0:
        raise DomainError(f"PSI_LOWER needs eta > 0, got {eta}")
    if eta > nu:
        raise DomainError(f"PSI_LOWER needs nu >= eta, got nu={nu}, eta={eta}")
    return eta


def mu_of(nu: float, eta: float) -> float:
    """μ = √(ν² − η²) without cancellation"""
    return math.sqrt(max((nu - eta) * (nu + eta), 0.0))


def _xi(x: float, a: float) -> float:
    return (x - a) * (x + a)


def _arc_excess(s: float, a: float) -> float:
    """s − a·arccos(a/x) for s = √(x² − a²), i.e. a·(u − atan u) with u = s/a"""
    if a == 0.0:
        return s
    u = s / a
    if u < 0.1:
        u2 = u * u
        total = 0.0
        power = u * u2
        for n in range(1, 9):
            total += (-1) ** (n + 1) * power / (2 * n + 1)
            power *= u2
        return a * total
    return s - a * math.atan2(s, a)


# -- θ̃ and θ̲ ---------------------------------------------------------------

def theta_upper(nu: float, x: float) -> float:
    """θ̃_ν(x) = √(x²−ν²) − ν·arccos(ν/x) − π/4, on [ν, ∞)"""
    _check_order(nu)
    if not math.isfinite(x) or not (x >= nu):
        raise DomainError(f"THETA_UPPER needs x >= nu, got nu={nu}, x={x}")
    if x == nu:
        return -QUARTER_PI
    s = math.sqrt(_xi(x, nu))
    return _arc_excess(s, nu) - QUARTER_PI


def theta_lower(nu: float, x: float) -> float:
    """θ̲_ν(x) = θ̃_ν(x) − (3x²+2ν²)/(24(x²−ν²)^{3/2}), on (ν, ∞)"""
    _check_order(nu)
    if not (x > nu) or not math.isfinite(x):
        raise DomainError(f"THETA_LOWER needs x > nu, got nu={nu}, x={x}")
    xi = _xi(x, nu)
    s = math.sqrt(xi)
    return _arc_excess(s, nu) - QUARTER_PI - (3.0 * x * x + 2.0 * nu * nu) / (24.0 * xi * s)


def theta_lower_clamped(nu: float, x: float) -> float:
    """max(θ̲_ν, −π/2)"""
    value = theta_lower(nu, x)
    return -HALF_PI if value < -HALF_PI else value


# -- φ̲ and φ̃ ---------------------------------------------------------------

def phi_lower(nu: float, x: float) -> float:
    """φ̲_ν = θ̃_ν + π/2"""
    return theta_upper(nu, x) + HALF_PI


def phi_upper(nu: float, x: float) -> float:
    """φ̃_ν = φ̲_ν + (9x²−2ν²)/(24(x²−ν²)^{3/2}), on (ν, ∞)"""
    _check_order(nu)
    if not (x > nu) or not math.isfinite(x):
        raise DomainError(f"PHI_UPPER needs x > nu, got nu={nu}, x={x}")
    xi = _xi(x, nu)
    s = math.sqrt(xi)
    return _arc_excess(s, nu) + QUARTER_PI + (9.0 * x * x - 2.0 * nu * nu) / (24.0 * xi * s)


def phi_upper_clamped(nu: float, x: float) -> float:
    """z★_ν below x★_ν, φ̃_ν above"""
    _check_order(nu)
    if not (x > nu) or not math.isfinite(x):
        raise DomainError(f"PHI_UPPER_CLAMPED needs x > nu, got nu={nu}, x={x}")
    points = critical_points(nu)
    if x < points.x_star:
        return points.z_star
    return phi_upper(nu, x)


# -- ψ̲ ---------------------------------------------------------------------

def psi_lower(nu: float, eta: float, x: float) -> float:
    """ψ̲_{ν,η}(x) on (μ, ∞); the η = ν limit is the same expression with μ = 0"""
    _check_order(nu)
    mu = envelope_domain_edge(EnvelopeKind.PSI_LOWER, nu, eta)
    if not (x > mu) or not math.isfinite(x):
        raise DomainError(f"PSI_LOWER needs x > mu={mu}, got x={x}")
    s = math.sqrt(_xi(x, mu))
    # (η²/μ)(π/4 − arccos(μ/x)/2) rewritten as (η²/2)·arcsin(μ/x)/μ
    arcsin_over_mu = math.asin(mu / x) / mu if mu > 0.0 else 1.0 / x
    return (_arc_excess(s, mu)
            + 0.5 * eta * eta * arcsin_over_mu
            + eta / s
            + QUARTER_PI * (2.0 * (mu - nu) + 1.0))


# -- dispatch ---------------------------------------------------------------

def eval_envelope(kind: EnvelopeKind, nu: float, x: float, eta: Optional[float] = None) -> float:
    """Value of an envelope function"""
    if kind is EnvelopeKind.THETA_UPPER:
        return theta_upper(nu, x)
    if kind is EnvelopeKind.THETA_LOWER:
        return theta_lower(nu, x)
    if kind is EnvelopeKind.THETA_LOWER_CLAMPED:
        return theta_lower_clamped(nu, x)
    if kind is EnvelopeKind.PHI_LOWER:
        return phi_lower(nu, x)
    if kind is EnvelopeKind.PHI_UPPER:
        return phi_upper(nu, x)
    if kind is EnvelopeKind.PHI_UPPER_CLAMPED:
        return phi_upper_clamped(nu, x)
    if kind is EnvelopeKind.PSI_LOWER:
        return psi_lower(nu, eta, x)
    raise DomainError(f"unknown envelope kind {kind!r}")


def envelope_derivative(kind: EnvelopeKind, nu: float, x: float, eta: Optional[float] = None) -> float:
    """Closed-form derivative of an envelope function, strictly inside its domain"""
    _check_order(nu)
    edge = envelope_domain_edge(kind, nu, eta)
    if not (x > edge) or not math.isfinite(x):
        raise DomainError(f"{kind.value} derivative needs x > {edge}, got nu={nu}, x={x}")
    if kind is EnvelopeKind.PSI_LOWER:
        mu = edge
        xi = _xi(x, mu)
        numerator = 2.0 * xi * xi - eta * (eta + 2.0) * xi - 2.0 * eta * mu * mu
        return numerator / (2.0 * x * xi * math.sqrt(xi))

    xi = _xi(x, nu)
    s = math.sqrt(xi)
    nu2 = nu * nu

    if kind in (EnvelopeKind.THETA_UPPER, EnvelopeKind.PHI_LOWER):
        return s / x
    if kind in (EnvelopeKind.THETA_LOWER, EnvelopeKind.THETA_LOWER_CLAMPED):
        if kind is EnvelopeKind.THETA_LOWER_CLAMPED and theta_lower(nu, x) < -HALF_PI:
            return 0.0
        numerator = math.fsum((8.0 * xi ** 3, xi * xi, 6.0 * nu2 * xi, 5.0 * nu2 * nu2))
        return numerator / (8.0 * xi * xi * s * x)
    if kind is EnvelopeKind.PHI_UPPER:
        return p_poly(nu, x) / (8.0 * x * xi * xi * s)
    if kind is EnvelopeKind.PHI_UPPER_CLAMPED:
        if x < critical_points(nu).x_star:
            return 0.0
        return p_poly(nu, x) / (8.0 * x * xi * xi * s)
    raise DomainError(f"unknown envelope kind {kind!r}")


def envelope_domain_edge(kind: EnvelopeKind, nu: float, eta: Optional[float] = None) -> float:
    """Left end of the kind's declared domain"""
    if kind is EnvelopeKind.PSI_LOWER:
        return mu_of(nu, _check_eta(nu, eta))
    return nu


def monotone_edge(kind: EnvelopeKind, nu: float, eta: Optional[float] = None) -> float:
    """Left end of the sub-domain where the kind is strictly increasing"""
    if kind in (EnvelopeKind.PHI_UPPER, EnvelopeKind.PHI_UPPER_CLAMPED):
        return critical_points(nu).x_star
    if kind is EnvelopeKind.PSI_LOWER:
        return critical_points(nu, eta).x_hash
    return envelope_domain_edge(kind, nu, eta)


def envelope_asymptotic(kind: EnvelopeKind, nu: float, x: float, eta: Optional[float] = None) -> float:
    """Printed large-x expansion of each envelope"""
    nu2 = nu * nu
    if kind is EnvelopeKind.THETA_UPPER:
        return x - math.pi * (2 * nu + 1) / 4 + nu2 / (2 * x)
    if kind in (EnvelopeKind.THETA_LOWER, EnvelopeKind.THETA_LOWER_CLAMPED):
        return (x - math.pi * (2 * nu + 1) / 4 + (4 * nu2 - 1) / (8 * x)
                + nu2 * (2 * nu2 - 13) / (48 * x ** 3))
    if kind is EnvelopeKind.PHI_LOWER:
        return x - math.pi * (2 * nu - 1) / 4 + nu2 / (2 * x)
    if kind in (EnvelopeKind.PHI_UPPER, EnvelopeKind.PHI_UPPER_CLAMPED):
        return (x - math.pi * (2 * nu - 1) / 4 + (4 * nu2 + 3) / (8 * x)
                + nu2 * (2 * nu2 + 23) / (48 * x ** 3))
    if kind is EnvelopeKind.PSI_LOWER:
        _check_eta(nu, eta)
        return x - math.pi * (2 * nu - 1) / 4 + (nu2 + 2 * eta) / (2 * x)
    raise DomainError(f"unknown envelope kind {kind!r}")


# -- critical polynomials ----------------------------------------------------

def p_poly(nu: float, x: float) -> float:
    """p_ν(x) = 8x⁶ − 3(8ν²+1)x⁴ + 4ν²(6ν²−1)x² − 8ν⁶, via its cubic in ξ = x² − ν²"""
    xi = _xi(x, nu)
    nu2 = nu * nu
    return math.fsum((8.0 * xi ** 3, -3.0 * xi * xi, -10.0 * nu2 * xi, -7.0 * nu2 * nu2))


def r_coefficients(mu: float, eta: float) -> np.ndarray:
    """Coefficients of r_{μ,η} in u = x², highest power first (u⁷ … u⁰)"""
    m2 = mu * mu
    m4, m6, m8, m10, m12 = m2 ** 2, m2 ** 3, m2 ** 4, m2 ** 5, m2 ** 6
    e = eta
    e2, e3, e4 = e * e, e ** 3, e ** 4
    fs = math.fsum

    c14 = 12.0
    c12 = fs((-44.0 * m2, 4.0 * e * (e3 + 4 * e2 - 5 * e - 18)))
    c10 = fs((40.0 * m4,
              8.0 * (-3 * e3 - 10 * e2 + 6 * e + 5) * e * m2,
              -e2 * (e + 2) ** 2 * (4 * e2 + 8 * e - 3)))
    c8 = fs((40.0 * m6,
             4.0 * (15 * e3 + 40 * e2 + 2 * e + 70) * e * m4,
             (20 * e4 + 96 * e3 + 147 * e2 + 96 * e + 52) * e2 * m2,
             (e + 2) ** 4 * e4))
    c6 = fs((-100.0 * m8,
             -8.0 * e * (10 * e3 + 20 * e2 + 14 * e + 45) * m6,
             -e2 * (40 * e4 + 144 * e3 + 171 * e2 + 116 * e + 80) * m4,
             -4.0 * e ** 5 * (e + 2) ** 3 * m2))
    c4 = fs((68.0 * m10,
             4.0 * (15 * e3 + 20 * e2 + 27 * e + 20) * e * m8,
             (40 * e4 + 96 * e3 + 81 * e2 + 24 * e + 16) * e2 * m6,
             6.0 * (e + 2) ** 2 * e ** 6 * m4))
    c2 = fs((-16.0 * m12,
             -8.0 * e * (3 * e3 + 2 * e2 + 4 * e - 4) * m10,
             -4.0 * e3 * (5 * e3 + 6 * e2 + 3 * e - 4) * m8,
             -4.0 * e ** 7 * (e + 2) * m6))
    c0 = fs((4.0 * e4 * m12, 4.0 * e ** 6 * m10, e ** 8 * m8))
    return np.array([c14, c12, c10, c8, c6, c4, c2, c0])


def r_poly(mu: float, eta: float, x: float) -> float:
    """r_{μ,η}(x), the degree-14 polynomial governing the ψ̲ comparison"""
    u = x * x
    coefficients = r_coefficients(mu, eta)
    degree = len(coefficients) - 1
    return math.fsum(float(c) * u ** (degree - i) for i, c in enumerate(coefficients))


# -- critical points ---------------------------------------------------------

def _x_star(nu: float) -> float:
    """Unique root of p_ν in (ν, ∞), solved as a cubic in ξ"""
    nu2 = nu * nu

    def cubic(xi: float) -> float:
        return math.fsum((8.0 * xi ** 3, -3.0 * xi * xi, -10.0 * nu2 * xi, -7.0 * nu2 * nu2))

    # the cubic decreases on [0, ξ_c] from a non-positive value
    xi_lo = 0.125 + math.sqrt(80.0 * nu2 + 3.0) / (8.0 * math.sqrt(3.0))
    xi_hi = 2.0 * xi_lo
    while cubic(xi_hi) <= 0.0:
        xi_hi *= 2.0
    xi = optimize.brentq(cubic, xi_lo, xi_hi, xtol=1e-300, rtol=4.0 * np.finfo(float).eps, maxiter=500)
    return math.sqrt(nu2 + xi)


def _x_hash(mu: float, eta: float) -> float:
    inner = math.sqrt(eta * eta * (eta + 2.0) ** 2 + 16.0 * mu * mu * eta)
    return 0.5 * math.sqrt(4.0 * mu * mu + eta * (eta + 2.0) + inner)


def _x_at(mu: float, eta: float, x_hash: float) -> float:
    """Greatest real root of r_{μ,η}: numpy.roots in u = x², polished by brentq"""
    roots = np.roots(r_coefficients(mu, eta))
    real_roots = [float(r.real) for r in roots
                  if abs(r.imag) <= 1e-7 * max(1.0, abs(r)) and r.real > 0.0]
    if not real_roots:
        raise DomainError(f"r polynomial has no positive root for mu={mu}, eta={eta}")
    guess = math.sqrt(max(real_roots))

    def r(x: float) -> float:
        return r_poly(mu, eta, x)

    lo = max(x_hash, guess * (1.0 - 1e-6))
    hi = guess * (1.0 + 1e-6)
    while r(hi) <= 0.0:
        hi = lo + 2.0 * (hi - lo)
    while r(lo) >= 0.0 and lo > x_hash:
        lo = max(x_hash, lo - 2.0 * (hi - lo))
    if r(lo) >= 0.0:
        raise DomainError(f"could not isolate the greatest root of r for mu={mu}, eta={eta}")
    root = optimize.brentq(r, lo, hi, xtol=1e-300, rtol=4.0 * np.finfo(float).eps, maxiter=500)
    if not r(root * (1.0 + 1e-6)) > 0.0:
        raise DomainError(f"r is not positive beyond its greatest root for mu={mu}, eta={eta}")
    return root


@lru_cache(maxsize=1024)
def critical_points(nu: float, eta: Optional[float] = None) -> CriticalPoints:
    """x★_ν and z★_ν = φ̃_ν(x★_ν); with η also x#_{μ,η} and x@_{μ,η}"""
    _check_order(nu)
    x_star = _x_star(nu)
    z_star = phi_upper(nu, x_star)
    if eta is None:
        return CriticalPoints(x_star=x_star, z_star=z_star)

    _check_eta(nu, eta)
    mu = mu_of(nu, eta)
    x_hash = _x_hash(mu, eta)
    x_at = _x_at(mu, eta, x_hash)
    logger.debug("critical points nu=%g eta=%g: x_hash=%.12g x_at=%.12g", nu, eta, x_hash, x_at)
    return CriticalPoints(x_star=x_star, z_star=z_star, x_hash=x_hash, x_at=x_at)
