"""
Classical bounds for j_{ν,k} and j′_{ν,k}, kept for benchmarking

McMahon truncations A⁽¹⁾–A⁽³⁾, Hethcote, Elbert–Laforgia, Qu–Wong and the
Airy-type upper bound for derivative zeros. Each bound carries the ν-range
it was proved for; outside it the status is NOT_APPLICABLE.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from phasebound.errors import DomainError
from phasebound.families import BoundStatus
from phasebound.special_oracle import airy_deriv_zero, airy_zero

ELBERT_LAFORGIA_LIMIT = math.sqrt(31.0 / 28.0)


class BoundSource(Enum):
    HETHCOTE_UP = "HETHCOTE_UP"
    HETHCOTE_LO = "HETHCOTE_LO"
    EL_UP = "EL_UP"
    EL_LO = "EL_LO"
    QW_LO = "QW_LO"
    QW_UP = "QW_UP"
    AIRY_JPRIME_UP = "AIRY_JPRIME_UP"
    MCMAHON_1 = "MCMAHON_1"
    MCMAHON_2 = "MCMAHON_2"
    MCMAHON_3 = "MCMAHON_3"


@dataclass(frozen=True)
class ClassicBound:
    value: float
    status: BoundStatus
    source: BoundSource


def _check(nu: float, k: int) -> None:
    if not math.isfinite(nu) or nu < 0.0:
        raise DomainError(f"order must be finite and >= 0, got {nu}")
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"zero index must be a positive integer, got {k!r}")


def mcmahon_beta(nu: float, k: int, tau: Optional[float] = None) -> float:
    """β_{ν,k} = π(k + ν/2 − 1/4); with τ, π(k + ν/2 + τ − 5/4) for c_{ν,τ,k}"""
    if tau is None:
        return math.pi * (k + 0.5 * nu - 0.25)
    return math.pi * (k + 0.5 * nu + tau - 1.25)


def _mcmahon_terms(nu: float, beta: float, terms: int) -> float:
    m = 4.0 * nu * nu - 1.0
    value = beta
    if terms >= 2:
        value -= m / (8.0 * beta)
    if terms >= 3:
        value -= 4.0 * m * (28.0 * nu * nu - 31.0) / (3.0 * (8.0 * beta) ** 3)
    return value


def mcmahon(nu: float, k: int, terms: int = 3, tau: Optional[float] = None) -> float:
    """A⁽ᵗᵉʳᵐˢ⁾(β_{ν,k}), the truncated large-zero expansion"""
    _check(nu, k)
    if terms not in (1, 2, 3):
        raise DomainError(f"McMahon terms must be 1, 2 or 3, got {terms}")
    beta = mcmahon_beta(nu, k, tau)
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta} for nu={nu}, k={k}, tau={tau}")
    return _mcmahon_terms(nu, beta, terms)


def hethcote(nu: float, k: int) -> Tuple[ClassicBound, ClassicBound]:
    """(upper, lower); the lower bound A⁽¹⁾ holds only for ν ≤ 1/2"""
    _check(nu, k)
    upper = ClassicBound(mcmahon(nu, k, 2 if nu <= 0.5 else 1), BoundStatus.VALID, BoundSource.HETHCOTE_UP)
    if nu <= 0.5:
        lower = ClassicBound(mcmahon(nu, k, 1), BoundStatus.VALID, BoundSource.HETHCOTE_LO)
    else:
        lower = ClassicBound(math.nan, BoundStatus.NOT_APPLICABLE, BoundSource.HETHCOTE_LO)
    return upper, lower


def elbert_laforgia(nu: float, k: int) -> Tuple[ClassicBound, ClassicBound]:
    """(upper, lower); the lower bound needs ν < √(31/28)"""
    _check(nu, k)
    upper = ClassicBound(mcmahon(nu, k, 2 if nu <= 0.5 else 3), BoundStatus.VALID, BoundSource.EL_UP)
    if nu <= 0.5:
        lower = ClassicBound(mcmahon(nu, k, 3), BoundStatus.VALID, BoundSource.EL_LO)
    elif nu < ELBERT_LAFORGIA_LIMIT:
        lower = ClassicBound(mcmahon(nu, k, 2), BoundStatus.VALID, BoundSource.EL_LO)
    else:
        lower = ClassicBound(math.nan, BoundStatus.NOT_APPLICABLE, BoundSource.EL_LO)
    return upper, lower


def qu_wong(nu: float, k: int) -> Tuple[ClassicBound, ClassicBound]:
    """(lower, upper) from the transition-region asymptotics, ν > 0"""
    _check(nu, k)
    if nu == 0.0:
        raise DomainError("Qu-Wong bounds need nu > 0")
    a_k = airy_zero(k)
    scale = (0.5 * nu) ** (1.0 / 3.0)
    lower = nu - a_k * scale
    upper = lower + 0.15 * a_k * a_k / scale
    return (ClassicBound(lower, BoundStatus.VALID, BoundSource.QW_LO),
            ClassicBound(upper, BoundStatus.VALID, BoundSource.QW_UP))


def airy_upper_jprime(nu: float, k: int) -> float:
    """Airy-type upper bound ℓ̃′_{ν,k} for j′_{ν,k}, all ν ≥ 0"""
    _check(nu, k)
    a = abs(airy_deriv_zero(k))
    a32 = a ** 1.5
    return (nu
            + a * (0.5 * nu + 8.0 * a32 / 27.0) ** (1.0 / 3.0)
            + 9.0 * a * a / (10.0 * 2.0 ** (2.0 / 3.0)) * (27.0 * nu + 16.0 * a32) ** (-1.0 / 3.0))
