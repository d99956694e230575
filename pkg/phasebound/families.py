"""
Zero families and bound statuses shared across the library
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from phasebound.errors import DomainError


class BoundStatus(Enum):
    """Validity of one side of an enclosure"""
    VALID = "VALID"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    CONVENTION = "CONVENTION"


class FamilyTag(Enum):
    J = "J"
    Y = "Y"
    C = "C"
    JPRIME = "JPRIME"
    YPRIME = "YPRIME"
    CPRIME = "CPRIME"
    UPRIME = "UPRIME"
    WPRIME = "WPRIME"


class PhaseKind(Enum):
    """Which exact phase function a family is read from"""
    THETA = "THETA"
    PHI = "PHI"
    PSI = "PSI"


_PHASE_OF_TAG = {
    FamilyTag.J: PhaseKind.THETA,
    FamilyTag.Y: PhaseKind.THETA,
    FamilyTag.C: PhaseKind.THETA,
    FamilyTag.JPRIME: PhaseKind.PHI,
    FamilyTag.YPRIME: PhaseKind.PHI,
    FamilyTag.CPRIME: PhaseKind.PHI,
    FamilyTag.UPRIME: PhaseKind.PSI,
    FamilyTag.WPRIME: PhaseKind.PSI,
}


@dataclass(frozen=True)
class ZeroFamily:
    """Selector for one zero sequence: J, Y, C(τ), J′, Y′, C′(τ), U′(η) or W′(η)"""
    tag: FamilyTag
    tau: Optional[float] = None
    eta: Optional[float] = None

    def __post_init__(self):
        if self.tag is FamilyTag.C:
            if self.tau is None or not (0.0 < self.tau <= 1.0):
                raise DomainError(f"C family needs tau in (0, 1], got {self.tau}")
        elif self.tag is FamilyTag.CPRIME:
            if self.tau is None or not (0.0 <= self.tau < 1.0):
                raise DomainError(f"CPRIME family needs tau in [0, 1), got {self.tau}")
        elif self.tau is not None:
            raise DomainError(f"{self.tag.value} family takes no tau")

        if self.tag in (FamilyTag.UPRIME, FamilyTag.WPRIME):
            if self.eta is None or not (self.eta > 0.0) or not math.isfinite(self.eta):
                raise DomainError(f"{self.tag.value} family needs eta > 0, got {self.eta}")
        elif self.eta is not None:
            raise DomainError(f"{self.tag.value} family takes no eta")

    @property
    def phase_kind(self) -> PhaseKind:
        return _PHASE_OF_TAG[self.tag]

    @property
    def is_derivative(self) -> bool:
        return self.phase_kind is not PhaseKind.THETA

    def check_order(self, nu: float) -> None:
        """Validate ν against this family (ν ≥ 0, and ν ≥ η for U′/W′)"""
        if not math.isfinite(nu) or nu < 0.0:
            raise DomainError(f"order must be finite and >= 0, got {nu}")
        if self.eta is not None and self.eta > nu:
            raise DomainError(f"{self.tag.value} family needs nu >= eta, got nu={nu}, eta={self.eta}")

    def label(self) -> str:
        if self.tau is not None:
            return f"{self.tag.value}(tau={self.tau:g})"
        if self.eta is not None:
            return f"{self.tag.value}(eta={self.eta:g})"
        return self.tag.value

    @classmethod
    def j(cls) -> "ZeroFamily":
        return cls(FamilyTag.J)

    @classmethod
    def y(cls) -> "ZeroFamily":
        return cls(FamilyTag.Y)

    @classmethod
    def c(cls, tau: float) -> "ZeroFamily":
        return cls(FamilyTag.C, tau=tau)

    @classmethod
    def jprime(cls) -> "ZeroFamily":
        return cls(FamilyTag.JPRIME)

    @classmethod
    def yprime(cls) -> "ZeroFamily":
        return cls(FamilyTag.YPRIME)

    @classmethod
    def cprime(cls, tau: float) -> "ZeroFamily":
        return cls(FamilyTag.CPRIME, tau=tau)

    @classmethod
    def uprime(cls, eta: float) -> "ZeroFamily":
        return cls(FamilyTag.UPRIME, eta=eta)

    @classmethod
    def wprime(cls, eta: float) -> "ZeroFamily":
        return cls(FamilyTag.WPRIME, eta=eta)


def phase_target(family: ZeroFamily, k: int) -> float:
    """Phase level whose pre-image under the family's exact phase is the k-th zero"""
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"zero index must be a positive integer, got {k!r}")
    tag = family.tag
    if tag is FamilyTag.J:
        return math.pi * (k - 0.5)
    if tag is FamilyTag.Y:
        return math.pi * (k - 1)
    if tag is FamilyTag.C:
        return math.pi * (family.tau + k - 1.5)
    if tag is FamilyTag.JPRIME:
        return math.pi * (k - 0.5)
    if tag is FamilyTag.YPRIME:
        return math.pi * k
    if tag is FamilyTag.CPRIME:
        return math.pi * (family.tau + k - 0.5)
    if tag is FamilyTag.UPRIME:
        return math.pi * (k - 0.5)
    return math.pi * k


def is_convention_zero(family: ZeroFamily, nu: float, k: int) -> bool:
    """True for j′_{0,1} = 0 (also c′_{0,0,1}) and u′_{ν,ν,1} = 0"""
    if k != 1:
        return False
    if family.tag is FamilyTag.JPRIME or (family.tag is FamilyTag.CPRIME and family.tau == 0.0):
        return nu == 0.0
    if family.tag is FamilyTag.UPRIME:
        return family.eta == nu
    return False
