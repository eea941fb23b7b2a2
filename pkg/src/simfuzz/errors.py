"""Exception types raised by the engine, parser and auditor."""

from __future__ import annotations


class SimFuzzError(Exception):
    """Base class for every error raised by this package."""


class ArithmeticDomainError(SimFuzzError, ZeroDivisionError):
    pass


class RationalSyntaxError(SimFuzzError, ValueError):
    pass


class PiecewiseError(SimFuzzError, ValueError):
    """Malformed piecewise-linear function (bad domain, duplicate or missing points)."""


class DomainError(SimFuzzError, ValueError):
    """Evaluation outside a function's domain, or operands on different domains."""


class RangeError(SimFuzzError, ValueError):
    """A value that must lie in [0, 1] (or a factor in (0, 1]) does not."""


class UniverseMismatchError(SimFuzzError, ValueError):
    pass


class ValidationError(SimFuzzError, ValueError):
    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class ParseError(SimFuzzError, ValueError):
    """Syntax or semantic error in a text document, with a source position."""

    def __init__(self, message: str, line: int, column: int = 1, kind: str = "syntax",
                 expected: str | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.kind = kind
        self.expected = expected
        self.source = source
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"{self.source}:" if self.source else ""
        text = f"{where}{self.line}:{self.column}: {self.kind} error: {self.message}"
        if self.expected:
            text += f" (expected {self.expected})"
        return text
