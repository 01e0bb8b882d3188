"""Exception types raised across the package."""


class QclabError(Exception):
    """Base class for every error raised by qclab."""


class CyclicQuiver(QclabError):
    pass


class MixedArrowDirection(QclabError):
    pass


class BadValuation(QclabError):
    pass


class FrozenDirection(QclabError):
    pass


class NotPrime(QclabError):
    pass


class DegreeTooLarge(QclabError):
    pass


class DivisionByZero(QclabError, ZeroDivisionError):
    pass


class NotASubfield(QclabError):
    pass


class ShapeMismatch(QclabError):
    pass


class WrongField(QclabError):
    pass


class NotASubrep(QclabError):
    pass


class ExtTooLarge(QclabError):
    pass


class BudgetExceeded(QclabError):
    pass


class NotFound(QclabError):
    pass


class LambdaMismatch(QclabError):
    pass


class NonExactDivision(QclabError):
    pass


class HypothesisFailed(QclabError):
    pass


class SingularSystem(QclabError):
    pass


class ComplementNotFound(QclabError):
    pass


class HintRejected(QclabError):
    pass


class ParseError(QclabError):
    pass


class ValidationError(QclabError):
    pass


class NonIntegerCoefficients(QclabError):
    pass


class HoldoutMismatch(QclabError):
    pass
