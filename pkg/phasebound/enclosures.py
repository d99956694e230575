"""
Zero enclosures and counting-function bounds

Every bound is the pre-image of a zero's phase target under an envelope that
is known to lie on one side of the exact phase. Sides whose envelope cannot
reach the target are reported as NOT_APPLICABLE rather than raised, so table
builders always get a full row.
"""

import logging
import math
from dataclasses import dataclass

from phasebound.envelopes import (
    EnvelopeKind,
    critical_points,
    phi_lower,
    phi_upper_clamped,
    theta_lower_clamped,
    theta_upper,
)
from phasebound.errors import DomainError, TargetBelowRange
from phasebound.families import (
    BoundStatus,
    FamilyTag,
    ZeroFamily,
    is_convention_zero,
    phase_target,
)
from phasebound.inversion import invert_envelope, range_floor

logger = logging.getLogger(__name__)

__all__ = [
    "Enclosure",
    "CountBound",
    "enclose",
    "count_bessel_zeros",
    "count_deriv_zeros",
    "relative_width",
    "phase_target",
]


@dataclass(frozen=True)
class Enclosure:
    lower: float
    upper: float
    lower_status: BoundStatus
    upper_status: BoundStatus

    @property
    def two_sided(self) -> bool:
        return self.lower_status is BoundStatus.VALID and self.upper_status is BoundStatus.VALID

    def brackets(self, zero: float) -> bool:
        """Whether every VALID side holds strictly on its side of zero"""
        if self.lower_status is BoundStatus.VALID and not (self.lower < zero):
            return False
        if self.upper_status is BoundStatus.VALID and not (zero < self.upper):
            return False
        return True


@dataclass(frozen=True)
class CountBound:
    lower: int
    upper: int

    def contains(self, count: int) -> bool:
        return self.lower <= count <= self.upper


def _not_applicable() -> tuple:
    return math.nan, BoundStatus.NOT_APPLICABLE


def _gated(kind: EnvelopeKind, nu: float, target: float, eta=None) -> tuple:
    """Invert kind at target, or NOT_APPLICABLE when the target is out of its range"""
    try:
        return invert_envelope(kind, nu, target, eta), BoundStatus.VALID
    except TargetBelowRange as e:
        logger.debug("%s bound not applicable at nu=%g: %s", kind.value, nu, e)
        return _not_applicable()


def _enclose_cylinder(family: ZeroFamily, nu: float, k: int) -> Enclosure:
    target = phase_target(family, k)
    upper = invert_envelope(EnvelopeKind.THETA_LOWER, nu, target)
    if family.tag is FamilyTag.C and k == 1 and not (family.tau > 0.25):
        lower, lower_status = _not_applicable()
    else:
        lower, lower_status = _gated(EnvelopeKind.THETA_UPPER, nu, target)
    return Enclosure(lower, upper, lower_status, BoundStatus.VALID)


def _enclose_derivative(family: ZeroFamily, nu: float, k: int) -> Enclosure:
    if family.tag is FamilyTag.CPRIME and family.tau == 0.0:
        family = ZeroFamily.jprime()
    target = phase_target(family, k)
    upper = invert_envelope(EnvelopeKind.PHI_LOWER, nu, target)

    if is_convention_zero(family, nu, k):
        # j′_{0,1} := 0; the upper bound still holds for that convention
        return Enclosure(0.0, upper, BoundStatus.CONVENTION, BoundStatus.VALID)

    # z★_ν is evaluated every time; the ν-threshold is never tabulated
    if critical_points(nu).z_star <= target:
        lower, lower_status = _gated(EnvelopeKind.PHI_UPPER, nu, target)
    else:
        lower, lower_status = _not_applicable()
    return Enclosure(lower, upper, lower_status, BoundStatus.VALID)


def _enclose_ultraspherical(family: ZeroFamily, nu: float, k: int) -> Enclosure:
    if is_convention_zero(family, nu, k):
        return Enclosure(0.0, 0.0, BoundStatus.CONVENTION, BoundStatus.CONVENTION)
    target = phase_target(family, k)
    lower, lower_status = _not_applicable()
    if target > range_floor(EnvelopeKind.PSI_LOWER, nu, family.eta):
        upper, upper_status = invert_envelope(EnvelopeKind.PSI_LOWER, nu, target, family.eta), BoundStatus.VALID
    else:
        upper, upper_status = _not_applicable()
    return Enclosure(lower, upper, lower_status, upper_status)


_BUILDERS = {
    FamilyTag.J: _enclose_cylinder,
    FamilyTag.Y: _enclose_cylinder,
    FamilyTag.C: _enclose_cylinder,
    FamilyTag.JPRIME: _enclose_derivative,
    FamilyTag.YPRIME: _enclose_derivative,
    FamilyTag.CPRIME: _enclose_derivative,
    FamilyTag.UPRIME: _enclose_ultraspherical,
    FamilyTag.WPRIME: _enclose_ultraspherical,
}


def enclose(family: ZeroFamily, nu: float, k: int) -> Enclosure:
    """Enclosure of the k-th zero of the family at order ν"""
    family.check_order(nu)
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"zero index must be a positive integer, got {k!r}")
    return _BUILDERS[family.tag](family, nu, k)


def relative_width(enclosure: Enclosure) -> float:
    """upper/lower − 1, NaN unless both sides are VALID and lower > 0"""
    if not enclosure.two_sided or not (enclosure.lower > 0.0):
        return math.nan
    return enclosure.upper / enclosure.lower - 1.0


def _count(phase: float) -> int:
    return max(0, math.floor(phase / math.pi + 0.5))


def _check_count_args(nu: float, lam: float) -> None:
    if not math.isfinite(nu) or nu < 0.0:
        raise DomainError(f"order must be finite and >= 0, got {nu}")
    if not math.isfinite(lam) or not (lam > nu):
        raise DomainError(f"lambda must exceed nu, got nu={nu}, lambda={lam}")


def count_bessel_zeros(nu: float, lam: float) -> CountBound:
    """Bounds on the number of zeros of J_ν in (0, λ]"""
    _check_count_args(nu, lam)
    return CountBound(lower=_count(theta_lower_clamped(nu, lam)), upper=_count(theta_upper(nu, lam)))


def count_deriv_zeros(nu: float, lam: float) -> CountBound:
    """Bounds on the number of zeros of J′_ν in [0, λ], j′_{0,1} = 0 included"""
    _check_count_args(nu, lam)
    return CountBound(lower=_count(phi_lower(nu, lam)), upper=_count(phi_upper_clamped(nu, lam)))
