"""Exception types shared across the package."""

from __future__ import annotations


class CapacityError(OverflowError):
    """An exponent left the supported 16-bit range."""


class DivisibilityError(ValueError):
    """Exact monomial division was requested for a non-dividing pair."""


class ZeroPolynomialError(ValueError):
    """An operation that needs a nonzero polynomial received zero."""


class ParseError(ValueError):
    """System-file parse failure, addressed by line and column."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column
