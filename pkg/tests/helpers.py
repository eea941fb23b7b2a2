from fractions import Fraction as F
from importlib import resources

from hypothesis import strategies as st

from simfuzz.fuzzy import FuzzySet, Universe
from simfuzz.pwl import PiecewiseLinear, pwl_make

DATA = resources.files("simfuzz") / "data"


def data_text(name: str) -> str:
    return (DATA / name).read_text(encoding="utf-8")


def pl(*points, domain=None) -> PiecewiseLinear:
    pts = [(F(x), F(v)) for x, v in points]
    dom = domain or (pts[0][0], pts[-1][0])
    return pwl_make(dom, pts)


# hypothesis strategies -----------------------------------------------------

small_rationals = st.builds(F, st.integers(-40, 40), st.integers(1, 12))
unit_values = st.builds(lambda n, d: F(min(n, d), d), st.integers(0, 12), st.integers(1, 12))
factors = st.builds(lambda n, d: F(min(n, d), d), st.integers(1, 12), st.integers(1, 12))


@st.composite
def pl_functions(draw, domain=(F(0), F(1)), values=unit_values, max_points=6):
    a, b = domain
    k = draw(st.integers(0, max_points - 2))
    inner = draw(st.lists(st.integers(1, 23), min_size=k, max_size=k, unique=True))
    xs = [a] + sorted(a + (b - a) * F(i, 24) for i in inner) + [b]
    vs = draw(st.lists(values, min_size=len(xs), max_size=len(xs)))
    return pwl_make(domain, zip(xs, vs))


UNIT = Universe("u", 0, 1)


@st.composite
def unit_sets(draw, universe=UNIT):
    f = draw(pl_functions(domain=universe.interval))
    return FuzzySet("S", universe, f)
