"""Exception types.

Input problems derive from ``ValidationError`` (CLI exit code 2); numerical
breakdowns derive from ``NumericalError`` (CLI exit code 3).
"""


class SkewError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SkewError, ValueError):
    pass


class NumericalError(SkewError, ArithmeticError):
    pass


class NotHermitian(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class EmptyFactorList(ValidationError):
    pass


class InvalidSize(ValidationError):
    pass


class InvalidRank(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class NotUnitVector(ValidationError):
    pass


class WrongShape(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class NonQubitSite(ValidationError):
    pass


class NotPositiveSemidefinite(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class InconsistentResult(NumericalError):
    """A quantity that is provably nonnegative (or bounded) came out wrong."""
