"""Exception and warning types shared across the package."""


class ZeroConstantTerm(ZeroDivisionError):
    """A power series or denominator with zero constant term was inverted."""


class MixedAlgebras(ValueError):
    """Two elements from different graded algebras were combined."""


class InvalidDegrees(ValueError):
    """A generator, differential or class has the wrong degree."""


class DegreeCapExceeded(ValueError):
    """A cohomology computation was requested beyond the supported degree."""


class BadPartition(ValueError):
    """Base and fiber generator sets do not partition the generators."""


class IndexOutOfRange(ValueError):
    """A characteristic class index outside the admissible range."""


class HypothesisViolation(ValueError):
    """A theorem hypothesis needed by a computation does not hold.

    ``flag`` names the failed hypothesis (``euler_ok``, ``k_parity``, ...).
    """

    def __init__(self, flag, message=None):
        self.flag = flag
        super().__init__(message or f"{flag} failed")


class ParseError(ValueError):
    """Malformed input text."""


class ValidationError(ValueError):
    """Well-formed input that violates a data invariant."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class NegativeCoefficientWarning(UserWarning):
    """A rank series formula produced a negative coefficient."""
