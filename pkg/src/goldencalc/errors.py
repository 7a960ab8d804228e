"""Exception hierarchy.

Every error raised for a bad argument or an out-of-domain request derives from
:class:`DomainError`, which the CLI maps to exit status 3.
"""


class DomainError(ValueError):
    """Base class for mathematical domain violations."""


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class InvalidOrder(DomainError):
    """The divisor order k is zero (F_0 = 0 cannot divide)."""


class NegativeIndex(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class EvaluationAtZero(DomainError):
    """The Golden difference quotient divides by x."""


class EvenOrderForFermionic(DomainError):
    pass


class OddOrderForSemiclassical(DomainError):
    pass


class EvenOrderForState(DomainError):
    pass


class IndefiniteMetric(DomainError):
    """Some F_n^(k) along the ladder is negative, so sqrt(F_n^(k)) is not real."""


class WrongArity(DomainError):
    pass


class NotHecke(DomainError):
    pass


class PoleHit(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class PrecisionUnachievable(ArithmeticError):
    """A requested precision or residual bound cannot be met (CLI exit 4)."""


def check_order(k: int) -> None:
    if k == 0:
        raise InvalidOrder("divisor order k must be nonzero")
