"""
Certified inversion of monotone envelope branches
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from phasebound.envelopes import (
    EnvelopeKind,
    critical_points,
    envelope_derivative,
    envelope_domain_edge,
    eval_envelope,
)
from phasebound.errors import DomainError, TargetBelowRange

logger = logging.getLogger(__name__)

COARSE_TOL = 1e-6
TOL = 1e-12
MAX_ITER = 200

_INVERTIBLE = (
    EnvelopeKind.THETA_UPPER,
    EnvelopeKind.THETA_LOWER,
    EnvelopeKind.PHI_LOWER,
    EnvelopeKind.PHI_UPPER,
    EnvelopeKind.PSI_LOWER,
)


@dataclass(frozen=True)
class InverseQuery:
    kind: EnvelopeKind
    nu: float
    target: float
    eta: Optional[float] = None


@dataclass(frozen=True)
class InverseResult:
    """Pre-image x with the final bracket [lo, hi] that straddles the target"""
    x: float
    lo: float
    hi: float
    iterations: int


def range_floor(kind: EnvelopeKind, nu: float, eta: Optional[float] = None) -> float:
    """Smallest admissible target of a kind (−∞ for THETA_LOWER)"""
    if kind is EnvelopeKind.THETA_UPPER:
        return -0.25 * math.pi
    if kind is EnvelopeKind.PHI_LOWER:
        return 0.25 * math.pi
    if kind is EnvelopeKind.THETA_LOWER:
        return -math.inf
    if kind is EnvelopeKind.PHI_UPPER:
        return critical_points(nu).z_star
    if kind is EnvelopeKind.PSI_LOWER:
        points = critical_points(nu, eta)
        return eval_envelope(kind, nu, points.x_at, eta)
    raise DomainError(f"{kind.value} is not invertible")


def _left_edge(kind: EnvelopeKind, nu: float, eta: Optional[float]) -> float:
    if kind is EnvelopeKind.PHI_UPPER:
        return critical_points(nu).x_star
    if kind is EnvelopeKind.PSI_LOWER:
        return critical_points(nu, eta).x_at
    return envelope_domain_edge(kind, nu, eta)


def _seed(kind: EnvelopeKind, nu: float, target: float) -> float:
    if kind in (EnvelopeKind.THETA_UPPER, EnvelopeKind.THETA_LOWER):
        return target + math.pi * (2.0 * nu + 1.0) / 4.0
    return target + math.pi * (2.0 * nu - 1.0) / 4.0


def _validate(query: InverseQuery) -> None:
    if query.kind not in _INVERTIBLE:
        raise DomainError(f"{query.kind.value} is not invertible")
    if not math.isfinite(query.nu) or query.nu < 0.0:
        raise DomainError(f"order must be finite and >= 0, got {query.nu}")
    if not math.isfinite(query.target):
        raise DomainError(f"target must be finite, got {query.target}")
    if query.kind is EnvelopeKind.PSI_LOWER:
        if query.eta is None:
            raise DomainError("PSI_LOWER inversion needs eta")
    elif query.eta is not None:
        raise DomainError(f"{query.kind.value} inversion takes no eta")


def _theta_lower_left(nu: float, target: float, g: Callable[[float], float]) -> float:
    """A point just above ν where θ̲_ν is still below the target"""
    delta = 1e-3 * max(1.0, nu)
    while True:
        lo = nu + delta
        if lo <= nu:
            raise DomainError(f"target {target} too far below zero to resolve near nu={nu}")
        if g(lo) < 0.0:
            return lo
        delta /= 16.0


def _initial_bracket(g: Callable[[float], float], lo: float, seed: float) -> Tuple[float, float]:
    """Walk right from lo (where g < 0) until g > 0"""
    x = seed if seed > lo else lo + 1.0
    step = 1.0
    for _ in range(MAX_ITER):
        value = g(x)
        if value > 0.0:
            return lo, x
        if value == 0.0:
            return x, x
        lo = x
        x = lo + step
        step *= 2.0
    raise DomainError("could not bracket the target")


def invert_certified(
    query: InverseQuery,
    tol: float = TOL,
    coarse_tol: float = COARSE_TOL,
    max_iter: int = MAX_ITER,
) -> InverseResult:
    """Invert an envelope and return the pre-image with its certifying bracket"""
    _validate(query)
    kind, nu, eta, target = query.kind, query.nu, query.eta, query.target

    floor = range_floor(kind, nu, eta)
    if kind is EnvelopeKind.PSI_LOWER:
        if target <= floor:
            raise TargetBelowRange(
                f"target {target} does not exceed psi_lower(x_at) = {floor}", target, floor)
    elif target < floor:
        raise TargetBelowRange(f"target {target} below {kind.value} range start {floor}", target, floor)
    elif target == floor:
        edge = _left_edge(kind, nu, eta)
        return InverseResult(x=edge, lo=edge, hi=edge, iterations=0)

    def f(x: float) -> float:
        return eval_envelope(kind, nu, x, eta)

    def g(x: float) -> float:
        return f(x) - target

    if kind is EnvelopeKind.THETA_LOWER:
        lo = _theta_lower_left(nu, target, g)
    else:
        lo = _left_edge(kind, nu, eta)
    lo, hi = _initial_bracket(g, lo, _seed(kind, nu, target))
    if lo == hi:
        return InverseResult(x=lo, lo=lo, hi=hi, iterations=0)

    best_x, best_g = lo, abs(g(lo))
    x = 0.5 * (lo + hi)
    g_x = g(x)
    iterations = 1

    while iterations < max_iter:
        if g_x < 0.0:
            lo = x
        elif g_x > 0.0:
            hi = x
        if abs(g_x) < best_g:
            best_x, best_g = x, abs(g_x)

        scale = max(1.0, abs(hi))
        width = hi - lo
        if width <= tol * scale:
            break

        eps = 0.25 * tol * scale
        if g_x == 0.0:
            # exact hit: certify by stepping off to both sides
            if g(x - eps) < 0.0:
                lo = max(lo, x - eps)
            if g(x + eps) > 0.0:
                hi = min(hi, x + eps)
            break

        if width > coarse_tol * scale:
            x_next = 0.5 * (lo + hi)
        else:
            slope = envelope_derivative(kind, nu, x, eta)
            x_next = x - g_x / slope if slope > 0.0 and math.isfinite(slope) else math.nan
            if not (lo < x_next < hi):
                x_next = 0.5 * (lo + hi)
            elif abs(x_next - x) <= eps:
                # Newton has converged; straddle the iterate
                below, above = x_next - eps, x_next + eps
                if lo < below and g(below) < 0.0:
                    lo = below
                if above < hi and g(above) > 0.0:
                    hi = above
                iterations += 2

        x = x_next
        g_x = g(x)
        iterations += 1
    else:
        logger.warning("inversion of %s at nu=%g target=%g stopped after %d evaluations",
                       kind.value, nu, target, iterations)

    if not (lo <= best_x <= hi):
        best_x = 0.5 * (lo + hi)
    return InverseResult(x=best_x, lo=lo, hi=hi, iterations=iterations)


def invert(query: InverseQuery, **kwargs) -> float:
    """Unique pre-image of query.target under the query's envelope"""
    return invert_certified(query, **kwargs).x


def invert_envelope(kind: EnvelopeKind, nu: float, target: float, eta: Optional[float] = None) -> float:
    return invert(InverseQuery(kind=kind, nu=nu, target=target, eta=eta))
