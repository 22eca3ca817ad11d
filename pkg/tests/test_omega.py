import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import QQ, Poly, groebner

from conftest import CUBIC, RATIONAL_FIBER, corr
from corrsolve.algebraic import CurvePoint, as_proj
from corrsolve.finiteness import SharedFactorError
from corrsolve.omega import avoids_omega, omega, omega_size_bound
from corrsolve.orbits import orbit_closure, orbit_over
from corrsolve.poly import X, Y, is_constant


def test_hyperbola_is_unramified(hyperbola):
    om = omega(hyperbola)
    assert om.points == ()
    assert om.x_poly.as_expr() == X and om.y_poly.as_expr() == Y


def test_homogeneous_origin_in_omega(homogeneous):
    om = omega(homogeneous)
    assert CurvePoint(as_proj(0), as_proj(0)) in om.points
    assert len(om.points) <= omega_size_bound(homogeneous, om)


def test_parabola_branch_point(parabola):
    om = omega(parabola)
    assert CurvePoint(as_proj(0), as_proj(0)) in om.points
    assert omega_size_bound(parabola, om) > 0


def test_cubic_omega_is_finite_and_bounded(cubic):
    om = omega(cubic)
    assert 0 < len(om.points) <= omega_size_bound(cubic, om)


@pytest.mark.parametrize("text", RATIONAL_FIBER[:2] + [CUBIC])
def test_points_of_omega_lie_on_curve(text):
    C = corr(text)
    from corrsolve.algebraic import point_on_curve

    assert all(point_on_curve(C.p, pt) for pt in omega(C).points)


def test_shared_factor_is_rejected():
    # validated inputs have no single-variable factor; the guard is checked on the raw projection
    from corrsolve.omega import _projection
    from corrsolve.parser import parse

    p = parse("(y - 2)*(x*y - 1)")
    with pytest.raises(SharedFactorError):
        _projection(p, (p.diff(X), p.diff(Y)), Y, X)


def test_avoidance_matches_orbit_flags(homogeneous):
    om = omega(homogeneous)
    assert not avoids_omega(om, orbit_closure(homogeneous, CurvePoint(as_proj(0), as_proj(0))))


def test_hyperbola_orbit_over_zero_meets_omega_conservatively(hyperbola):
    # 0 is a root of x_poly although no finite curve point lies over it
    assert not avoids_omega(omega(hyperbola), orbit_over(hyperbola, 0))
    assert avoids_omega(omega(hyperbola), orbit_over(hyperbola, 2))


# containment: every common zero of p, p_x or of p, p_y is a listed Omega point


small = st.integers(-2, 2)


@settings(max_examples=15)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), small), min_size=3, max_size=5))
def test_singular_and_ramification_points_are_contained(terms):
    expr = sum(c * X**i * Y**j for i, j, c in terms)
    assume(expr != 0)
    try:
        C = corr(expr)
    except ValueError:
        return
    try:
        om = omega(C)
    except SharedFactorError:
        return
    for d in (C.px, C.py):
        if is_constant(d):
            continue
        G = groebner([C.p.as_expr(), d.as_expr()], Y, X, order="lex", domain=QQ)
        if list(G) == [1]:
            continue
        # elimination ideal generator in X divides x_poly
        elim = [g for g in G if not g.has(Y)]
        assert elim
        gen = Poly(elim[0], X).sqf_part()
        assert Poly(om.x_poly.as_expr(), X).rem(gen).is_zero
        # over a rational root of it, the rational curve points are listed
        for r in gen.ground_roots():
            fiber = Poly(C.p.as_expr().subs(X, r), Y)
            if fiber.is_zero:
                continue
            for s in fiber.ground_roots():
                if d.as_expr().subs({X: r, Y: s}) == 0:
                    assert CurvePoint(as_proj(r), as_proj(s)) in om.points
