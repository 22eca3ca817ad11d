import warnings

import pytest

from conftest import CUBIC, HOMOGENEOUS, corr
from corrsolve.algebraic import INF, as_proj
from corrsolve.correspondence import (HypothesisWarning, absolute_factor_count, fiber, is_smooth,
                                      new_correspondence, points_at_infinity)
from corrsolve.parser import parse


@pytest.mark.parametrize("text,count", [
    ("x^2 + 3*x*y + y^2", 2),  # two lines over Q(sqrt 5)
    ("x^2 - y^2", 2),
    ("x*y - 1", 1),
    (CUBIC, 1),
    ("x^2 + y^2", 2),  # splits over Q(i)
    ("x^2 - 2*y^2", 2),
    ("y^2 - x^3 - 1", 1),
    ("(x*y - 1)*(x - y)", 2),
    ("(x - 1)*(x*y - 1)", 2),
    ("(x^2 + 1)*(y - 3)*(x - y)", 4),
])
def test_absolute_factor_count(text, count):
    assert absolute_factor_count(parse(text)) == count


def test_hypothesis_warning_for_homogeneous():
    with pytest.warns(HypothesisWarning):
        C = new_correspondence(parse(HOMOGENEOUS))
    assert C.report.absolutely_irreducible == "no"
    assert not C.report.smooth


def test_assume_irreducible_skips_check():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        C = new_correspondence(parse("x*y - 1"), assume_irreducible=True)
    assert C.report.absolutely_irreducible == "asserted" and C.report.holds


@pytest.mark.parametrize("text", ["0", "x - 1", "y^2", "(x - y)^2", "(x - 1)*(x*y - 1)"])
def test_rejected_inputs(text):
    with pytest.raises(ValueError):
        new_correspondence(parse(text))


def test_smoothness():
    ok, sing = is_smooth(corr("x*y - 1"))
    assert ok and not sing
    ok, sing = is_smooth(corr(CUBIC))
    assert ok
    ok, sing = is_smooth(corr(HOMOGENEOUS))
    assert not ok and repr(sing[0]) == "(inf, inf)" and repr(sing[1]) == "(0, 0)"
    # the circle has a node at (inf, inf) on P^1 x P^1
    ok, sing = is_smooth(corr("x^2 + y^2 - 1"))
    assert not ok and [repr(s) for s in sing] == ["(inf, inf)"]


def test_fibers_hyperbola(hyperbola):
    assert fiber(hyperbola, as_proj(2)) == [as_proj(0.5)]
    assert fiber(hyperbola, as_proj(0)) == [INF]
    assert fiber(hyperbola, INF) == [as_proj(0)]
    assert fiber(hyperbola, as_proj(4), side="second") == [as_proj(0.25)]


def test_fibers_homogeneous(homogeneous):
    f = fiber(homogeneous, as_proj(1))
    assert len(f) == 2 and all(abs(z.approx()**2 + 3 * z.approx() + 1) < 1e-10 for z in f)
    assert fiber(homogeneous, INF) == [INF]


def test_points_at_infinity(cubic, hyperbola):
    assert [repr(p) for p in points_at_infinity(hyperbola)] == ["(inf, 0)", "(0, inf)"]
    assert [repr(p) for p in points_at_infinity(cubic)] == ["(inf, 0)", "(0, inf)", "(inf, inf)"]


def test_transpose(cubic):
    T = cubic.transpose
    assert (T.dx, T.dy) == (cubic.dy, cubic.dx)
    assert T.transpose.p == cubic.p
