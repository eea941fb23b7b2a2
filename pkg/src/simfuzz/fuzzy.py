"""Fuzzy sets over named universes and the similarity measure between them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import UniverseMismatchError, ValidationError
from .numeric import Rational, RationalLike, as_rational, format_rational
from .pwl import PiecewiseLinear, pwl_abs_diff_integral, pwl_make


@dataclass(frozen=True)
class Universe:
    """A named variable ranging over the closed interval ``[lo, hi]``."""

    name: str
    lo: Rational
    hi: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if not self.lo < self.hi:
            raise ValidationError(
                f"universe {self.name}: empty interval "
                f"[{format_rational(self.lo)}, {format_rational(self.hi)}]")

    @property
    def interval(self) -> tuple[Rational, Rational]:
        return self.lo, self.hi

    @property
    def length(self) -> Rational:
        return self.hi - self.lo


class Violation(NamedTuple):
    kind: str  # "domain" or "range"
    message: str


@dataclass(frozen=True)
class FuzzySet:
    name: str
    universe: Universe
    membership: PiecewiseLinear

    def __call__(self, x: RationalLike) -> Rational:
        return self.membership(x)


def validate_set(s: FuzzySet) -> list[Violation]:
    """Return the list of problems with ``s``; empty means valid."""
    found = []
    if s.membership.domain != s.universe.interval:
        a, b = map(format_rational, s.membership.domain)
        found.append(Violation(
            "domain", f"set {s.name}: membership domain [{a}, {b}] differs from "
                      f"universe {s.universe.name}"))
    for x, v in s.membership.points:
        if not 0 <= v <= 1:
            found.append(Violation(
                "range", f"set {s.name}: membership {format_rational(v)} at "
                         f"x = {format_rational(x)} outside [0, 1]"))
    return found


def fuzzy_set(name: str, universe: Universe,
              points: list[tuple[RationalLike, RationalLike]]) -> FuzzySet:
    """Build and validate a set from breakpoints on ``universe``."""
    s = FuzzySet(name, universe, pwl_make(universe.interval, points))
    problems = validate_set(s)
    if problems:
        raise ValidationError(problems[0].message, problems)
    return s


def similarity(a: FuzzySet, b: FuzzySet) -> Rational:
    """``1 / (1 + mean |a - b|)`` over the shared universe, exactly.

    The mean is taken over the declared universe interval, never over the
    supports of the sets.
    """
    if a.universe != b.universe:
        raise UniverseMismatchError(
            f"sets {a.name} and {b.name} live on different universes "
            f"({a.universe.name} vs {b.universe.name})")
    mean_gap = pwl_abs_diff_integral(a.membership, b.membership) / a.universe.length
    return 1 / (1 + mean_gap)
