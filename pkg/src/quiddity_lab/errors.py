"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`QuiddityError`.
Errors that mean "a resource cap was hit" derive from :class:`BudgetExceeded`,
so callers (the CLI in particular) can tell "bad input" from "too expensive".
"""


class QuiddityError(ValueError):
    """Domain error: the input is outside what the operation accepts."""


class BudgetExceeded(QuiddityError):
    """A computation hit an iteration, size or memory cap."""


# ring_core
class MalformedSpec(QuiddityError):
    pass


class MalformedElement(QuiddityError):
    pass


class CompositeP(QuiddityError):
    pass


class ReduciblePolynomial(QuiddityError):
    pass


class NTooSmall(QuiddityError):
    pass


class NotAUnit(QuiddityError):
    pass


class RingMismatch(QuiddityError):
    pass


class NotAField(QuiddityError):
    pass


class OrderCapExceeded(BudgetExceeded):
    pass


# arith
class PEven(QuiddityError):
    pass


class PNotPrime(QuiddityError):
    pass


class CharTwo(QuiddityError):
    pass


class AZero(QuiddityError):
    pass


class OutOfRange(QuiddityError):
    pass


class WrongCharacteristic(QuiddityError):
    pass


class TooLarge(BudgetExceeded):
    pass


# continuant / quiddity
class ContinuantNotUnitSign(QuiddityError):
    pass


class TooShort(QuiddityError):
    pass


class NotASolution(QuiddityError):
    pass


# families
class InvalidParameters(QuiddityError):
    pass


class WitnessNotFound(QuiddityError):
    pass


class BadU(QuiddityError):
    pass


class NotUnits(QuiddityError):
    pass


class ABNotInvertible(QuiddityError):
    pass


class PTooSmall(QuiddityError):
    pass


class XZero(QuiddityError):
    pass


class SizeCapExceeded(BudgetExceeded):
    pass


# bounds
class Budget(BudgetExceeded):
    pass


class RangeTooLarge(BudgetExceeded):
    pass
