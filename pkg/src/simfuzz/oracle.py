"""Grid-sampled floating-point re-implementation used to cross-check the exact engine.

Nothing here looks at crossings or integrates cell by cell: sets are sampled
on a uniform grid (endpoints included), pointwise operations act on the
samples, and the similarity integral is a plain trapezoidal sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .engine import ModificationType
from .errors import UniverseMismatchError
from .fuzzy import FuzzySet, similarity
from .numeric import Rational, rational
from .pwl import PiecewiseLinear


@dataclass(frozen=True)
class SampledFunction:
    lo: float
    hi: float
    values: np.ndarray

    def __post_init__(self) -> None:
        if len(self.values) < 2:
            raise ValueError("a sampled function needs at least 2 samples")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("samples must be finite")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)


def sample(f: PiecewiseLinear | FuzzySet, n: int) -> SampledFunction:
    """Sample a function at ``n`` uniform points using float interpolation."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if isinstance(f, FuzzySet):
        f = f.membership
    xs = np.array([float(x) for x in f.xs])
    vs = np.array([float(v) for v in f.values])
    lo, hi = xs[0], xs[-1]
    return SampledFunction(lo, hi, np.interp(np.linspace(lo, hi, n), xs, vs))


def _trapezoid(values: np.ndarray, lo: float, hi: float) -> float:
    h = (hi - lo) / (len(values) - 1)
    cells = (values[:-1] + values[1:]) * (h / 2)
    return float(np.cumsum(cells)[-1])  # fixed left-to-right order


def oracle_similarity(a: FuzzySet, b: FuzzySet, n: int) -> float:
    if a.universe != b.universe:
        raise UniverseMismatchError(f"sets {a.name} and {b.name} live on different universes")
    lo, hi = float(a.universe.lo), float(a.universe.hi)
    gap = np.abs(sample(a, n).values - sample(b, n).values)
    return 1.0 / (1.0 + _trapezoid(gap, lo, hi) / (hi - lo))


# Expressions over sampled functions ----------------------------------------

class Leaf(NamedTuple):
    f: Union[PiecewiseLinear, FuzzySet]


class Scale(NamedTuple):
    s: float
    arg: "Expr"


class ClipDiv(NamedTuple):
    arg: "Expr"
    s: float


class Min(NamedTuple):
    left: "Expr"
    right: "Expr"


class Max(NamedTuple):
    left: "Expr"
    right: "Expr"


class Complement(NamedTuple):
    arg: "Expr"


Expr = Union[Leaf, Scale, ClipDiv, Min, Max, Complement]


def _domain(e: Expr) -> tuple[Rational, Rational]:
    if isinstance(e, Leaf):
        f = e.f.membership if isinstance(e.f, FuzzySet) else e.f
        return f.domain
    if isinstance(e, (Min, Max)):
        d = _domain(e.left)
        if _domain(e.right) != d:
            raise UniverseMismatchError("operands of min/max live on different universes")
        return d
    return _domain(e.arg)


def _eval(e: Expr, n: int) -> np.ndarray:
    if isinstance(e, Leaf):
        return sample(e.f, n).values
    if isinstance(e, Scale):
        return float(e.s) * _eval(e.arg, n)
    if isinstance(e, ClipDiv):
        return np.minimum(1.0, _eval(e.arg, n) / float(e.s))
    if isinstance(e, Min):
        return np.minimum(_eval(e.left, n), _eval(e.right, n))
    if isinstance(e, Max):
        return np.maximum(_eval(e.left, n), _eval(e.right, n))
    if isinstance(e, Complement):
        return 1.0 - _eval(e.arg, n)
    raise TypeError(f"not an oracle expression: {e!r}")


def oracle_pointwise(expr: Expr, n: int) -> SampledFunction:
    lo, hi = _domain(expr)
    return SampledFunction(float(lo), float(hi), _eval(expr, n))


def fmp_expression(rb, obs, t, similarities=None) -> Expr:
    """Oracle expression for an FMP aggregate.

    ``similarities`` is a per-rule sequence of per-term values; by default the
    exact engine's values are used, so only the pointwise pipeline is under
    test.
    """
    t = ModificationType.parse(t)
    rule_exprs = []
    for i, rule in enumerate(rb.rules):
        sims = (similarities[i] if similarities is not None else
                [similarity(a, o) for a, o in zip(rule.antecedents, obs)])
        terms = [Scale(float(s), Leaf(rule.consequent)) if t.value == 1
                 else ClipDiv(Leaf(rule.consequent), float(s)) for s in sims]
        expr = terms[0]
        for term in terms[1:]:
            expr = Min(expr, term)
        rule_exprs.append(expr)
    agg = rule_exprs[0]
    for e in rule_exprs[1:]:
        agg = Max(agg, e)
    return agg


def fmt_expressions(rb, bstar, t) -> list[Expr]:
    t = ModificationType.parse(t)
    sims = [float(similarity(r.consequent, bstar)) for r in rb.rules]
    out = []
    for k in range(rb.m):
        terms = [Scale(s, Leaf(r.antecedents[k])) if t.value == 1
                 else ClipDiv(Leaf(r.antecedents[k]), s) for r, s in zip(rb.rules, sims)]
        expr = terms[0]
        for term in terms[1:]:
            expr = Max(expr, term)
        out.append(expr)
    return out


class CrossCheck(NamedTuple):
    max_deviation: float
    tol: float
    passed: bool

    def __str__(self) -> str:
        status = "pass" if self.passed else "fail"
        return f"max deviation {self.max_deviation:.3e} (tol {self.tol:g}): {status}"


def cross_check(exact: PiecewiseLinear | Rational, approx: SampledFunction | float,
                tol: float) -> CrossCheck:
    """Largest absolute deviation between an exact object and its float approximation."""
    if isinstance(exact, PiecewiseLinear):
        lo, hi = exact.domain
        n = approx.n
        exact_vals = np.array([float(exact(lo + (hi - lo) * rational(i, n - 1)))
                               for i in range(n)])
        dev = float(np.max(np.abs(exact_vals - approx.values)))
    else:
        dev = abs(float(exact) - float(approx))
    return CrossCheck(dev, tol, dev <= tol)
