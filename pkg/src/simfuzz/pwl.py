"""Total piecewise-linear functions on a closed rational interval.

A :class:`PiecewiseLinear` is stored as its canonical breakpoint sequence:
x-coordinates strictly increasing from the left to the right end of the
domain, and no interior breakpoint collinear with its neighbours.  Because
the form is canonical, structural equality (``==``) is extensional equality.

All arithmetic is exact.  Binary operations work on the merged breakpoint
grid of both operands plus the points where the operands cross, so on each
cell of that grid the difference of the operands is linear with constant
sign.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import DomainError, PiecewiseError, RangeError
from .numeric import Rational, RationalLike, as_rational, format_rational, rational

Point = tuple[Rational, Rational]

ONE = rational(1)
ZERO = rational(0)


def _collinear(p: Point, q: Point, r: Point) -> bool:
    return (q[1] - p[1]) * (r[0] - q[0]) == (r[1] - q[1]) * (q[0] - p[0])


def _canonical(points: Sequence[Point]) -> tuple[Point, ...]:
    out: list[Point] = []
    for p in points:
        while len(out) >= 2 and _collinear(out[-2], out[-1], p):
            out.pop()
        out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Exact piecewise-linear function, total on ``[points[0].x, points[-1].x]``.

    Build instances with :func:`pwl_make` (validating) or :func:`constant`.
    The constructor itself canonicalizes but assumes sorted, distinct x.
    """

    points: tuple[Point, ...]
    _xs: tuple[Rational, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pts = tuple((as_rational(x), as_rational(v)) for x, v in self.points)
        if len(pts) < 2:
            raise PiecewiseError("a piecewise-linear function needs at least 2 breakpoints")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise PiecewiseError("breakpoint x-coordinates must be strictly increasing")
        pts = _canonical(pts)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_xs", tuple(p[0] for p in pts))

    @property
    def domain(self) -> tuple[Rational, Rational]:
        return self.points[0][0], self.points[-1][0]

    @property
    def xs(self) -> tuple[Rational, ...]:
        return self._xs

    @property
    def values(self) -> tuple[Rational, ...]:
        return tuple(p[1] for p in self.points)

    def __call__(self, x: RationalLike) -> Rational:
        return pwl_eval(self, x)

    def __repr__(self) -> str:
        body = " ".join(f"({format_rational(x)}, {format_rational(v)})" for x, v in self.points)
        return f"PiecewiseLinear[{body}]"


def pwl_make(domain: tuple[RationalLike, RationalLike],
             points: Iterable[tuple[RationalLike, RationalLike]]) -> PiecewiseLinear:
    """Validate ``points`` against ``domain`` and build the canonical function.

    Points may come in any order; duplicates, points outside the domain and
    missing endpoint values are errors.
    """
    a, b = as_rational(domain[0]), as_rational(domain[1])
    if not a < b:
        raise PiecewiseError(f"empty domain [{format_rational(a)}, {format_rational(b)}]")
    pts = sorted((as_rational(x), as_rational(v)) for x, v in points)
    for (x0, _), (x1, _) in zip(pts, pts[1:]):
        if x0 == x1:
            raise PiecewiseError(f"duplicate breakpoint x = {format_rational(x0)}")
    if not pts or pts[0][0] != a or pts[-1][0] != b:
        raise PiecewiseError("breakpoints must include both domain endpoints")
    # Endpoints present and sorted, so nothing can lie outside [a, b].
    return PiecewiseLinear(tuple(pts))


def constant(domain: tuple[RationalLike, RationalLike], value: RationalLike) -> PiecewiseLinear:
    v = as_rational(value)
    return pwl_make(domain, [(domain[0], v), (domain[1], v)])


def pwl_eval(f: PiecewiseLinear, x: RationalLike) -> Rational:
    x = as_rational(x)
    a, b = f.domain
    if x < a or x > b:
        raise DomainError(
            f"x = {format_rational(x)} outside domain [{format_rational(a)}, {format_rational(b)}]")
    pts = f.points
    i = bisect_right(f.xs, x) - 1
    if i >= len(pts) - 1:
        return pts[-1][1]
    (x0, v0), (x1, v1) = pts[i], pts[i + 1]
    if x == x0:
        return v0
    return v0 + (v1 - v0) * (x - x0) / (x1 - x0)


def _check_same_domain(f: PiecewiseLinear, g: PiecewiseLinear) -> None:
    if f.domain != g.domain:
        fa, fb = map(format_rational, f.domain)
        ga, gb = map(format_rational, g.domain)
        raise DomainError(f"domain mismatch: [{fa}, {fb}] vs [{ga}, {gb}]")


def _sweep(f: PiecewiseLinear, xs: Sequence[Rational]) -> list[Rational]:
    """Values of f at sorted points of its domain, in one left-to-right pass."""
    pts = f.points
    last = len(pts) - 2
    out: list[Rational] = []
    i = 0
    for x in xs:
        while i < last and pts[i + 1][0] <= x:
            i += 1
        (x0, v0), (x1, v1) = pts[i], pts[i + 1]
        if x == x0:
            out.append(v0)
        elif x == x1:
            out.append(v1)
        else:
            out.append(v0 + (v1 - v0) * (x - x0) / (x1 - x0))
    return out


def _cells(f: PiecewiseLinear, g: PiecewiseLinear) -> list[tuple[Rational, Rational, Rational]]:
    """``(x, f(x), g(x))`` over merged breakpoints of f and g plus strict interior crossings.

    On each cell between consecutive entries, f - g is linear and does not
    change sign.
    """
    _check_same_domain(f, g)
    merged = sorted(set(f.xs) | set(g.xs))
    fv, gv = _sweep(f, merged), _sweep(g, merged)
    out = [(merged[0], fv[0], gv[0])]
    d0 = fv[0] - gv[0]
    for x1, f1, g1 in zip(merged[1:], fv[1:], gv[1:]):
        x0, f0, _ = out[-1]
        d1 = f1 - g1
        if (d0 < 0 < d1) or (d1 < 0 < d0):
            t = d0 / (d0 - d1)
            fc = f0 + (f1 - f0) * t
            out.append((x0 + (x1 - x0) * t, fc, fc))
        out.append((x1, f1, g1))
        d0 = d1
    return out


def _cell_grid(f: PiecewiseLinear, g: PiecewiseLinear) -> list[Rational]:
    return [x for x, _, _ in _cells(f, g)]


def pwl_crossings(f: PiecewiseLinear, g: PiecewiseLinear) -> list[Rational]:
    """Points where f - g changes sign, in increasing order.

    Tangencies (zero without a sign change) are excluded, and so are the
    ends of any interval on which f and g coincide.
    """
    cells = _cells(f, g)
    grid = [x for x, _, _ in cells]
    diffs = [fx - gx for _, fx, gx in cells]
    out: list[Rational] = []
    for i in range(1, len(grid) - 1):
        if diffs[i] != 0:
            continue
        left, right = diffs[i - 1], diffs[i + 1]
        if (left < 0 < right) or (right < 0 < left):
            out.append(grid[i])
    return out


def pwl_extremum(kind: str, f: PiecewiseLinear, g: PiecewiseLinear) -> PiecewiseLinear:
    """Exact pointwise ``min`` or ``max`` of two functions on the same domain."""
    if kind == "min":
        pick: Callable[[Rational, Rational], Rational] = min
    elif kind == "max":
        pick = max
    else:
        raise ValueError(f"kind must be 'min' or 'max', not {kind!r}")
    return PiecewiseLinear(tuple((x, pick(fx, gx)) for x, fx, gx in _cells(f, g)))


def pwl_min(f: PiecewiseLinear, g: PiecewiseLinear) -> PiecewiseLinear:
    return pwl_extremum("min", f, g)


def pwl_max(f: PiecewiseLinear, g: PiecewiseLinear) -> PiecewiseLinear:
    return pwl_extremum("max", f, g)


def in_unit_range(f: PiecewiseLinear) -> bool:
    # Linear between breakpoints, so checking breakpoints is enough.
    return all(0 <= v <= 1 for v in f.values)


def _require_unit_range(f: PiecewiseLinear, what: str) -> None:
    if not in_unit_range(f):
        raise RangeError(f"{what} must take values in [0, 1]")


def _require_factor(s: Rational) -> Rational:
    s = as_rational(s)
    if not 0 < s <= 1:
        raise RangeError(f"factor {format_rational(s)} outside (0, 1]")
    return s


def map_values(f: PiecewiseLinear, fn: Callable[[Rational], Rational]) -> PiecewiseLinear:
    """Apply an affine map to every breakpoint value (x-coordinates unchanged)."""
    return PiecewiseLinear(tuple((x, fn(v)) for x, v in f.points))


def pwl_complement(f: PiecewiseLinear) -> PiecewiseLinear:
    _require_unit_range(f, "complement operand")
    return map_values(f, lambda v: 1 - v)


def pwl_scale(s: RationalLike, f: PiecewiseLinear) -> PiecewiseLinear:
    s = _require_factor(s)
    return map_values(f, lambda v: s * v)


def pwl_clip_div(f: PiecewiseLinear, s: RationalLike) -> PiecewiseLinear:
    """Pointwise ``min(1, f / s)`` for a factor ``s`` in (0, 1]."""
    s = _require_factor(s)
    _require_unit_range(f, "clip-divide operand")
    stretched = map_values(f, lambda v: v / s)
    return pwl_min(constant(f.domain, ONE), stretched)


def pwl_abs_diff_integral(f: PiecewiseLinear, g: PiecewiseLinear) -> Rational:
    """Exact value of the integral of ``|f - g|`` over the common domain."""
    cells = _cells(f, g)
    total = ZERO
    prev_x, prev_d = cells[0][0], abs(cells[0][1] - cells[0][2])
    for x, fx, gx in cells[1:]:
        d = abs(fx - gx)
        total += (prev_d + d) * (x - prev_x)
        prev_x, prev_d = x, d
    return total / 2


def pwl_equal(f: PiecewiseLinear, g: PiecewiseLinear) -> bool:
    return f.points == g.points


def restrict(f: PiecewiseLinear, lo: RationalLike, hi: RationalLike) -> PiecewiseLinear:
    """The restriction of ``f`` to a sub-interval ``[lo, hi]``."""
    lo, hi = as_rational(lo), as_rational(hi)
    a, b = f.domain
    if not a <= lo < hi <= b:
        raise DomainError("restriction interval must be a non-empty sub-interval of the domain")
    inner = [(x, v) for x, v in f.points if lo < x < hi]
    return PiecewiseLinear(((lo, f(lo)), *inner, (hi, f(hi))))


def difference_grid(f: PiecewiseLinear, g: PiecewiseLinear) -> list[Rational]:
    """Public view of the cell grid: merged breakpoints and crossings of f and g."""
    return _cell_grid(f, g)
