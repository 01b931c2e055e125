"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class FrobsigError(Exception):
    """Base class for all package errors."""


class InvalidFieldSpec(FrobsigError, ValueError):
    pass


class DivisionByZero(FrobsigError, ZeroDivisionError):
    pass


class NotAPthPower(FrobsigError, ValueError):
    pass


class AmbientMismatch(FrobsigError, ValueError):
    pass


class DegreeBudgetExceeded(FrobsigError):
    pass


class NotZeroDimensional(FrobsigError):
    pass


class NotPrimaryToOrigin(FrobsigError):
    pass


class ZeroMatrix(FrobsigError, ValueError):
    pass


class ShapeMismatch(FrobsigError, ValueError):
    pass


class TooManySubspaces(FrobsigError):
    def __init__(self, count: int, budget: int, hint: str = ""):
        msg = f"{count} candidate subspaces exceed the budget of {budget}"
        if hint:
            msg += f"; {hint}"
        super().__init__(msg)
        self.count = count
        self.budget = budget


class NotProperContainment(FrobsigError, ValueError):
    pass


class IncompatibleSpec(FrobsigError, ValueError):
    pass


class InfiniteResidueField(FrobsigError):
    """Exhaustive enumeration was requested over an infinite field."""


class ParseError(FrobsigError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class UnknownVariable(ParseError):
    pass


class UnknownIdeal(ParseError):
    pass
