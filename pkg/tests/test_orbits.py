import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CUBIC, RATIONAL_FIBER, corr
from corrsolve.algebraic import INF, CurvePoint, as_proj, isolate_roots, point_on_curve
from corrsolve.finiteness import period
from corrsolve.orbits import (OrbitStatus, materialize_points, orbit_closure, orbit_over, orbit_report,
                              orbit_size, orbit_size_bound, rational_points_of_height)
from corrsolve.parser import parse
from corrsolve.poly import Y, factor_univariate, unipoly

# ---------------------------------------------------------------------------
# independent oracle: explicit-point BFS for products of bilinear factors


def bilinear_factors(text):
    """Split '(..)*(..)' into coefficient tuples (a, b, c, d) of a + b x + c y + d x y."""
    out = []
    for f, _ in parse(text).factor_list()[1]:
        d = {m: Fraction(int(v.numerator), int(v.denominator)) for m, v in f.terms()}
        assert all(i <= 1 and j <= 1 for i, j in d)
        out.append((d.get((0, 0), 0), d.get((1, 0), 0), d.get((0, 1), 0), d.get((1, 1), 0)))
    return out


def solve_linear(c0, c1):
    """Root of c0 + c1 * t on P^1 (None stands for infinity); None-if-identically-zero is excluded."""
    if c1 == 0:
        assert c0 != 0
        return None
    return -c0 / c1


def second_coords(factors, x):
    out = set()
    for a, b, c, d in factors:
        if x is None:  # leading terms in x: b + d y
            if b == 0 and d == 0:
                continue
            out.add(solve_linear(b, d))
        else:
            c0, c1 = a + b * x, c + d * x
            if c0 == 0 and c1 == 0:
                continue
            out.add(solve_linear(c0, c1))
    return out


def first_coords(factors, y):
    return second_coords([(a, c, b, d) for a, b, c, d in factors], y)


class Unbounded(Exception):
    pass


def bfs_orbit(factors, x0, limit=None):
    """All points reachable from the fiber over x0; Unbounded once more than ``limit`` coordinates appear."""
    pts, todo_x, todo_y, seen_x, seen_y = set(), [x0], [], set(), set()
    while todo_x or todo_y:
        if limit is not None and len(seen_x) + len(seen_y) > limit:
            raise Unbounded
        if todo_x:
            x = todo_x.pop()
            if x in seen_x:
                continue
            seen_x.add(x)
            for y in second_coords(factors, x):
                pts.add((x, y))
                todo_y.append(y)
        else:
            y = todo_y.pop()
            if y in seen_y:
                continue
            seen_y.add(y)
            for x in first_coords(factors, y):
                pts.add((x, y))
                todo_x.append(x)
    return pts


def as_pair(pt):
    conv = lambda z: None if z is INF else z.value
    return conv(pt.first), conv(pt.second)


SEEDS = [Fraction(v) for v in ("0", "1", "-1", "2", "1/2", "-3", "5/2")]


@pytest.mark.parametrize("text", RATIONAL_FIBER)
def test_closure_matches_bfs_oracle(text):
    C = corr(text)
    factors = bilinear_factors(text)
    for x0 in SEEDS + [None]:
        bundle = orbit_over(C, INF if x0 is None else x0)
        assert bundle.closed
        got = {as_pair(pt) for pt in materialize_points(C, bundle).points}
        assert got == bfs_orbit(factors, x0), (text, x0)
        assert orbit_size(C, bundle) == len(got)


bilinear = st.tuples(*[st.integers(-3, 3)] * 4).filter(lambda t: t[2] or t[3]).filter(lambda t: t[1] or t[3])


@settings(max_examples=25)
@given(st.lists(bilinear, min_size=2, max_size=3), st.fractions(-4, 4, max_denominator=3))
def test_closure_matches_bfs_random(factors, x0):
    from corrsolve.poly import X, bipoly

    polys = [bipoly(a + b * X + c * Y + d * X * Y) for a, b, c, d in factors]
    p = polys[0]
    for q in polys[1:]:
        p = p * q
    try:
        C = corr(p.as_expr())
    except ValueError:
        return  # repeated or single-variable factor
    exact = [tuple(Fraction(v) for v in f) for f in factors]
    limit = 30
    try:
        ref = bfs_orbit(exact, x0, limit)
    except Unbounded:
        # more than `limit` coordinates, at most two of them infinite
        assert not orbit_over(C, x0, degree_cap=limit - 3).closed
        return
    bundle = orbit_over(C, x0)
    assert bundle.closed
    got = {as_pair(pt) for pt in materialize_points(C, bundle).points}
    assert got == ref


# ---------------------------------------------------------------------------
# fixtures


def test_homogeneous_origin(homogeneous):
    b = orbit_closure(homogeneous, CurvePoint(as_proj(0), as_proj(0)), degree_cap=5)
    assert b.status is OrbitStatus.CLOSED
    assert b.a_poly.as_expr().free_symbols and b.a_poly.degree() == 1 and b.b_poly.degree() == 1
    assert not b.a_inf and not b.b_inf
    assert [repr(p) for p in materialize_points(homogeneous, b).points] == ["(0, 0)"]
    assert orbit_report(homogeneous, b).meets_omega


def test_homogeneous_infinite_orbit(homogeneous):
    r = isolate_roots(unipoly(Y**2 + 3 * Y + 1, Y))[0]
    b = orbit_closure(homogeneous, CurvePoint(as_proj(1), r), degree_cap=50)
    assert b.status is OrbitStatus.CAP_EXCEEDED and b.cap == 50


def test_homogeneous_infinity_orbit(homogeneous):
    b = orbit_over(homogeneous, INF)
    assert b.closed and b.a_inf and b.b_inf and orbit_size(homogeneous, b) == 1


def test_hyperbola_singleton(hyperbola):
    b = orbit_closure(hyperbola, CurvePoint(as_proj(2), as_proj(Fraction(1, 2))))
    assert [repr(p) for p in materialize_points(hyperbola, b).points] == ["(2, 1/2)"]


def test_start_must_be_on_curve(hyperbola):
    with pytest.raises(ValueError):
        orbit_closure(hyperbola, CurvePoint(as_proj(2), as_proj(3)))


def test_cubic_fiber_over_one(cubic):
    # p(1, Y) = -Y^2 - 1, so the fiber over 1 is a conjugate pair
    r = isolate_roots(unipoly(parse(CUBIC).as_expr().subs("x", 1), Y))[0]
    b = orbit_closure(cubic, CurvePoint(as_proj(1), r))
    assert b.closed
    n = period(cubic).period
    assert orbit_size(cubic, b) <= orbit_size_bound(cubic, n)
    pts = materialize_points(cubic, b).points
    assert all(point_on_curve(cubic.p, pt) for pt in pts)


def test_galois_stability(cubic):
    b = orbit_over(cubic, 2)
    for poly in (b.a_poly, b.b_poly):
        _, facs = factor_univariate(poly)
        assert all(m == 1 for _, m in facs)


def test_materialized_projections_match_bundle(cubic):
    b = materialize_points(cubic, orbit_over(cubic, 3))
    xs = {repr(pt.first) for pt in b.points}
    assert xs == {repr(a) for a in isolate_roots(b.a_poly)}
    ys = {repr(pt.second) for pt in b.points}
    assert ys == {repr(a) for a in isolate_roots(b.b_poly)}


@pytest.mark.parametrize("dx,dy,n,expected", [(1, 1, 1, 1), (2, 2, 1, 16), (3, 2, 2, 729)])
def test_orbit_size_bound(dx, dy, n, expected):
    from corrsolve.poly import X

    C = corr(X**dx * Y**dy + X + Y + 1) if (dx, dy) != (1, 1) else corr("x*y - 1")
    assert (C.dx, C.dy) == (dx, dy)
    assert orbit_size_bound(C, n) == expected


def test_monotone_expansion(homogeneous):
    r = isolate_roots(unipoly(Y**2 + 3 * Y + 1, Y))[0]
    degs = [orbit_closure(homogeneous, CurvePoint(as_proj(1), r), degree_cap=c) for c in (4, 10, 20, 40)]
    totals = [b.a_poly.degree() + b.b_poly.degree() for b in degs]
    assert totals == sorted(totals)
    # root sets only grow: each smaller bundle's a-poly divides the larger one
    for small, big in zip(degs, degs[1:]):
        assert big.a_poly.rem(small.a_poly).is_zero


def test_irrational_seed_carries_its_conjugates(cubic):
    from corrsolve.poly import X

    r = isolate_roots(unipoly(X**2 - 2, X))[0]
    b = orbit_over(cubic, r)
    assert b.closed
    assert b.a_poly.rem(unipoly(X**2 - 2, X)).is_zero
    pts = materialize_points(cubic, b).points
    assert {repr(pt.first) for pt in pts} >= {repr(z) for z in isolate_roots(unipoly(X**2 - 2, X))}


def test_rational_heights():
    pts = rational_points_of_height(2)
    assert pts == [Fraction(v) for v in ("-1", "0", "1", "-2", "-1/2", "1/2", "2")]


def test_random_rational_seeds_respect_bound(cubic):
    rng = random.Random(7)
    bound = orbit_size_bound(cubic, period(cubic).period)
    for _ in range(5):
        x0 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        b = orbit_over(cubic, x0)
        assert b.closed and orbit_size(cubic, b) <= bound
