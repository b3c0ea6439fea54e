class SteerwitError(Exception):
    """Base class for all errors raised by steerwit."""


class ValidationError(SteerwitError, ValueError):
    """Input operator fails a structural check."""


class NotHermitian(ValidationError):
    pass


class NotUnitTrace(ValidationError):
    pass


class NotAState(ValidationError):
    pass


class NotEntangled(ValidationError):
    pass


class NotReal(ValidationError):
    pass


class NotAWitnessEllipsoid(ValidationError):
    pass


class NoConvergence(SteerwitError, ArithmeticError):
    pass


class SingularMarginal(SteerwitError, ArithmeticError):
    """Bob's reduced operator is singular; the canonical filter does not exist."""


class DegenerateFrame(SteerwitError, ValueError):
    pass


class InconsistentInvariants(SteerwitError, AssertionError):
    """Internal consistency failure; indicates a bug rather than bad input."""
