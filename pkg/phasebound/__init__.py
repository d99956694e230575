"""
phasebound: certified enclosures for zeros of Bessel functions and their derivatives
"""

from phasebound.classic_bounds import (
    BoundSource,
    ClassicBound,
    airy_upper_jprime,
    elbert_laforgia,
    hethcote,
    mcmahon,
    qu_wong,
)
from phasebound.enclosures import (
    CountBound,
    Enclosure,
    count_bessel_zeros,
    count_deriv_zeros,
    enclose,
    relative_width,
)
from phasebound.envelopes import CriticalPoints, EnvelopeKind, critical_points, eval_envelope
from phasebound.errors import (
    AccuracyDegraded,
    ConfigError,
    ContainmentError,
    DegenerateDerivative,
    DomainError,
    PhaseboundError,
    SturmConditionError,
    TargetBelowRange,
)
from phasebound.families import BoundStatus, FamilyTag, PhaseKind, ZeroFamily, phase_target
from phasebound.inversion import InverseQuery, invert
from phasebound.liouville import ComparisonPair, GridSpec, SturmReport, default_grid, verify_c2, verify_c3
from phasebound.phase_oracle import (
    PhasePoint,
    phase_phi,
    phase_psi,
    phase_theta,
    reference_zeros,
    tau_star,
    true_count,
    true_zero,
    true_zeros,
)
from phasebound.special_oracle import airy_deriv_zero, airy_zero, bessel_eval

__version__ = "1.0.0"

__all__ = [
    "AccuracyDegraded",
    "BoundSource",
    "BoundStatus",
    "ClassicBound",
    "ComparisonPair",
    "ConfigError",
    "ContainmentError",
    "CountBound",
    "CriticalPoints",
    "DegenerateDerivative",
    "DomainError",
    "Enclosure",
    "GridSpec",
    "EnvelopeKind",
    "FamilyTag",
    "InverseQuery",
    "PhaseKind",
    "PhasePoint",
    "PhaseboundError",
    "SturmConditionError",
    "SturmReport",
    "TargetBelowRange",
    "ZeroFamily",
    "airy_deriv_zero",
    "airy_upper_jprime",
    "airy_zero",
    "bessel_eval",
    "count_bessel_zeros",
    "count_deriv_zeros",
    "critical_points",
    "default_grid",
    "elbert_laforgia",
    "enclose",
    "eval_envelope",
    "hethcote",
    "invert",
    "mcmahon",
    "phase_phi",
    "phase_psi",
    "phase_target",
    "phase_theta",
    "qu_wong",
    "reference_zeros",
    "relative_width",
    "tau_star",
    "true_count",
    "true_zero",
    "true_zeros",
    "verify_c2",
    "verify_c3",
]
