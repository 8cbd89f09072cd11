"""Exception hierarchy shared by every module.

All library errors derive from :class:`FFHeightError`, so callers (the CLI
in particular) can separate bad input from internal failures.
"""

from __future__ import annotations


class FFHeightError(Exception):
    """Base class for input-level errors; optionally carries a source location."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def located(self, line: int | None = None, column: int | None = None) -> "FFHeightError":
        if line is not None and self.line is None:
            self.line = line
        if column is not None and self.column is None:
            self.column = column
        return self

    def __str__(self) -> str:
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"col {self.column}")
        if where:
            return f"{', '.join(where)}: {self.message}"
        return self.message


class AllZero(FFHeightError):
    pass


class DivisionByZero(FFHeightError, ZeroDivisionError):
    pass


class PoleAtParameter(FFHeightError):
    pass


class NotAPoint(FFHeightError):
    pass


class DimensionMismatch(FFHeightError):
    pass


class InhomogeneousInput(FFHeightError):
    pass


class DegreeTooSmall(FFHeightError):
    pass


class NotAMorphism(FFHeightError):
    pass


class UnsupportedShape(FFHeightError):
    pass


class ProblemSyntaxError(FFHeightError):
    """Malformed literal or problem file."""


class CofactorSystemError(RuntimeError):
    """The elimination system had no solution up to the largest exponent tried.

    This is an internal failure (a certified morphism always admits cofactors),
    hence not an :class:`FFHeightError`.
    """
