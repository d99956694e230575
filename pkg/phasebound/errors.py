"""
Exception hierarchy for phasebound
"""


class PhaseboundError(Exception):
    """Base class for all phasebound errors"""
    pass


class DomainError(PhaseboundError, ValueError):
    """Argument outside the domain of an operation"""
    pass


class TargetBelowRange(DomainError):
    """Phase target below the invertible range of an envelope"""

    def __init__(self, message: str, target: float = float("nan"), minimum: float = float("nan")):
        super().__init__(message)
        self.target = target
        self.minimum = minimum


class DegenerateDerivative(PhaseboundError, ArithmeticError):
    """Estimated derivative is not positive where a Liouville potential is needed"""
    pass


class AccuracyDegraded(PhaseboundError):
    """Oracle evaluation left the guaranteed-accuracy envelope in strict mode"""

    def __init__(self, message: str, nu: float = float("nan"), x: float = float("nan")):
        super().__init__(message)
        self.nu = nu
        self.x = x


class SturmConditionError(PhaseboundError):
    """A comparison-condition check failed"""
    pass


class ContainmentError(PhaseboundError):
    """A bound reported VALID does not bracket the oracle value"""
    pass


class ConfigError(PhaseboundError):
    """Malformed run configuration"""
    pass
