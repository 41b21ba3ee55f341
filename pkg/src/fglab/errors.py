"""Exception hierarchy shared by every fglab module."""


class FglabError(Exception):
    """Base class for all library errors."""


class NonPrime(FglabError, ValueError):
    pass


class IrreduciblePolyNotFound(FglabError, RuntimeError):
    pass


class NotEisenstein(FglabError, ValueError):
    def __init__(self, index, reason=""):
        self.index = index
        super().__init__(f"Eisenstein condition fails at coefficient {index}" + (f": {reason}" if reason else ""))


class PrecisionExhausted(FglabError, ArithmeticError):
    pass


class DivisionByZeroToPrecision(FglabError, ZeroDivisionError):
    pass


class RingMismatch(FglabError, TypeError):
    pass


class VariableMismatch(FglabError, TypeError):
    pass


class NonzeroConstantTerm(FglabError, ValueError):
    pass


class LeadingCoefficientNotUnit(FglabError, ValueError):
    pass


class IntegralityViolation(FglabError, ArithmeticError):
    pass


class NonUniqueSolution(FglabError, RuntimeError):
    pass


class NotPTypical(FglabError, ValueError):
    pass


class DegreeCapTooSmall(FglabError, ValueError):
    pass


class NotAssociative(FglabError, ValueError):
    pass


class NotCommutative(FglabError, ValueError):
    pass


class UnitMissing(FglabError, ValueError):
    pass


class DSquaredNonzero(FglabError, RuntimeError):
    pass


class SizeLimit(FglabError, ValueError):
    pass


class UnsupportedBase(FglabError, ValueError):
    pass


class SearchSpaceTooLarge(FglabError, ValueError):
    pass
