from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ, Poly

from corrsolve.poly import (X, Y, Chart, bihomogenize, bipoly, canonical, chart_poly, content_in, dehomogenize,
                            eval_at, factor_univariate, is_homogeneous, is_squarefree, resultant, squarefree_part,
                            unipoly)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def bipolys(draw, max_deg=2, nonconstant_in=()):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)), small,
                                 min_size=1, max_size=6))
    for var in nonconstant_in:
        k = 0 if var == X else 1
        if all(m[k] == 0 or c == 0 for m, c in terms.items()):
            m = (1, 0) if var == X else (0, 1)
            terms[m] = Fraction(1)
    return bipoly({m: c for m, c in terms.items()})


def sylvester_resultant(f, g, var):
    """Independent oracle: determinant of the Sylvester matrix built from coefficient lists."""
    fe, ge = sympy.Poly(f.as_expr(), var), sympy.Poly(g.as_expr(), var)
    a, b = fe.all_coeffs(), ge.all_coeffs()
    m, n = len(a) - 1, len(b) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (m - 1 - i))
    return sympy.expand(sympy.Matrix(rows).det(method="berkowitz"))


def test_resultant_homogeneous_ramification():
    p = bipoly(X**2 + 3 * X * Y + Y**2)
    r = resultant(p, p.diff(X), Y)
    assert sympy.expand(r.as_expr() - sylvester_resultant(p, p.diff(X), Y)) == 0
    # [DERIVED] p(X, -2X/3) scaled by 3^2: (4 - 18 + 9) X^2
    assert sympy.expand(r.as_expr()) == -5 * X**2


def test_resultant_hyperbola_composition():
    # Res_Y(Z*Y - 1, X*Y - 1) is the 2x2 determinant Z*(-1) - (-1)*X = X - Z
    z = sympy.Symbol("z")
    f = Poly(z * Y - 1, Y, z, domain=QQ)
    g = Poly(X * Y - 1, X, Y, domain=QQ)
    r = resultant(f, g, Y)
    assert sympy.expand(r.as_expr()) == X - z


@settings(max_examples=40)
@given(bipolys(nonconstant_in=(Y,)), bipolys(nonconstant_in=(Y,)))
def test_resultant_matches_sylvester(f, g):
    r = resultant(f, g, Y)
    assert sympy.expand(r.as_expr() - sylvester_resultant(f, g, Y)) == 0


def test_squarefree_and_factor():
    f = unipoly((X - 1)**2 * (X + 2) * (2 * X**2 + 1), X)
    assert not is_squarefree(f)
    s = squarefree_part(f)
    assert is_squarefree(s) and s.degree() == 4
    content, facs = factor_univariate(f)
    assert sorted(m for _, m in facs) == [1, 1, 2]
    prod = content
    for q, m in facs:
        prod = prod * q.as_expr()**m
    assert sympy.expand(prod - f.as_expr()) == 0


def test_canonical_is_primitive_with_positive_lead():
    f = bipoly(-Fraction(3, 2) * X * Y + 3)
    c = canonical(f)
    assert c.as_expr() == X * Y - 2
    assert canonical(c) == c


def test_content_in_and_eval():
    f = bipoly((X - 1) * (X * Y + 1))
    assert content_in(f, Y).as_expr() == X - 1
    assert eval_at(f, X, 2).as_expr() == 2 * Y + 1


def test_homogeneity():
    assert is_homogeneous(bipoly(X**2 + 3 * X * Y + Y**2))
    assert not is_homogeneous(bipoly(X * Y - 1))


def test_bihomogenize_hyperbola():
    P = bihomogenize(bipoly(X * Y - 1))
    # x1*y1 - x0*y0
    assert P.as_dict() == {(0, 1, 0, 1): 1, (1, 0, 1, 0): -1}
    assert P.bidegree == (1, 1)


def test_charts_cubic():
    p = bipoly(X * Y - X**2 * Y - X * Y**2 - 1)
    # x0 = s, y1 = y: s*y - y - s*y^2 - s^2
    q = chart_poly(p, Chart.X_INFINITE)
    assert sympy.expand(q.as_expr() - (X * Y - Y - X * Y**2 - X**2)) == 0


@settings(max_examples=50)
@given(bipolys(max_deg=3))
def test_dehomogenize_inverts_bihomogenize(p):
    if p.is_zero:
        return
    assert dehomogenize(bihomogenize(p), Chart.AFFINE) == p


@settings(max_examples=30)
@given(bipolys(max_deg=3))
def test_charts_agree_on_overlap(p):
    """The X_INFINITE chart is s^dx p(1/s, y), checked by substitution."""
    if p.is_zero:
        return
    dx = max(p.degree(X), 0)
    s = sympy.Symbol("s")
    q = chart_poly(p, Chart.X_INFINITE)
    lhs = sympy.expand(q.as_expr().subs(X, s))
    rhs = sympy.expand(s**dx * p.as_expr().subs(X, 1 / s))
    assert sympy.simplify(lhs - rhs) == 0
