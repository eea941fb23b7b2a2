"""Exact rational numbers.

Every coordinate, similarity value and integral in the engine is a GMP
rational (``gmpy2.mpq``).  These are always kept in lowest terms with a
positive denominator and compare exactly, so nothing here ever touches
floating point.  They compare and hash equal to :class:`fractions.Fraction`
values, and ``Fraction`` inputs are accepted wherever a rational is.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

from .errors import ArithmeticDomainError, RationalSyntaxError

Rational = type(mpq())
RationalLike = Union[int, str, Fraction, Rational]

_INT = r"[+-]?\d+"
_RATIONAL_RE = re.compile(
    rf"^\s*(?:(?P<num>{_INT})(?:\s*/\s*(?P<den>\d+))?|(?P<dec>[+-]?(?:\d+\.\d*|\.\d+)))\s*$"
)


def rational(numerator: int, denominator: int = 1) -> Rational:
    """Build a canonical rational ``numerator/denominator``.

    >>> rational(-2, -4)
    mpq(1,2)
    """
    if denominator == 0:
        raise ArithmeticDomainError(f"zero denominator in {numerator}/0")
    return mpq(numerator, denominator)


def divide(a: RationalLike, b: RationalLike) -> Rational:
    a, b = as_rational(a), as_rational(b)
    if b == 0:
        raise ArithmeticDomainError(f"division of {format_rational(a)} by zero")
    return a / b


def parse_rational(text: str) -> Rational:
    """Parse ``"p"``, ``"p/q"`` or a finite decimal such as ``"0.25"`` exactly."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise RationalSyntaxError(f"not a rational literal: {text!r}")
    if m.group("dec") is not None:
        # Fraction parses decimal strings exactly (no float round trip).
        return mpq(Fraction(m.group("dec")))
    den = int(m.group("den")) if m.group("den") is not None else 1
    return rational(int(m.group("num")), den)


def as_rational(value: RationalLike) -> Rational:
    if type(value) is Rational:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)) or type(value).__name__ == "mpz":
        return mpq(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(value: RationalLike) -> str:
    """Render as ``p/q``, or ``p`` when the denominator is 1."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
