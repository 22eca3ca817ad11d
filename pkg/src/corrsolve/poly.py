"""Exact polynomial layer.

Univariate and bivariate polynomials are plain sympy ``Poly`` objects over
``QQ``: a ``UniPoly`` has a single generator (``x``, ``y`` or an auxiliary
symbol), a ``BiPoly`` always carries the generators ``(x, y)`` even when it
does not depend on one of them.  This module adds the operations the rest of
the package needs on top of sympy: resultants in a named variable, canonical
normalization, squarefree parts, univariate factorization with content, and
bihomogenization on the four affine charts of P^1 x P^1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import sympy
from sympy import QQ, Poly

X, Y, Z, T = sympy.symbols("x y z t")
GENS = (X, Y)

UniPoly = Poly
BiPoly = Poly


def to_fraction(c) -> Fraction:
    """Convert a sympy/gmpy rational or int into a ``Fraction``."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    num = getattr(c, "numerator", None)
    den = getattr(c, "denominator", None)
    if num is not None and den is not None:
        num = num() if callable(num) else num
        den = den() if callable(den) else den
        return Fraction(int(num), int(den))
    r = sympy.Rational(c)
    return Fraction(int(r.p), int(r.q))


def to_qq(c):
    c = Fraction(c)
    return QQ(c.numerator, c.denominator)


def bipoly(expr) -> Poly:
    """Build a BiPoly from a sympy expression, a Poly, or a dict {(i, j): coeff}."""
    if isinstance(expr, dict):
        rep = {k: to_qq(v) for k, v in expr.items() if v != 0}
        if not rep:
            return Poly(0, *GENS, domain=QQ)
        return Poly.from_dict(rep, *GENS, domain=QQ)
    if isinstance(expr, Poly):
        expr = expr.as_expr()
    return Poly(expr, *GENS, domain=QQ)


def unipoly(expr, var=X) -> Poly:
    if isinstance(expr, (list, tuple)):
        # coefficients indexed by degree
        rep = {(i,): to_qq(c) for i, c in enumerate(expr) if c != 0}
        if not rep:
            return Poly(0, var, domain=QQ)
        return Poly.from_dict(rep, var, domain=QQ)
    if isinstance(expr, Poly):
        expr = expr.as_expr()
    return Poly(expr, var, domain=QQ)


def terms(f: Poly) -> dict[tuple[int, ...], Fraction]:
    return {m: to_fraction(c) for m, c in f.terms() if c}


def degree_in(f: Poly, var) -> int:
    """Degree in ``var``; -1 for the zero polynomial, 0 if var is not a generator."""
    if f.is_zero:
        return -1
    if var not in f.gens:
        return 0
    return f.degree(var)


def is_constant(f: Poly) -> bool:
    return f.is_zero or f.total_degree() == 0


def canonical(f: Poly) -> Poly:
    """Primitive integer-coefficient representative with positive grlex leading coefficient.

    The result keeps ``QQ`` as domain so it compares equal to other
    canonical forms built the same way.
    """
    if f.is_zero:
        return f
    _, g = f.clear_denoms(convert=True)
    g = g.primitive()[1]
    if g.LC(order="grlex") < 0:
        g = -g
    return g.set_domain(QQ)


def monic(f: Poly) -> Poly:
    return f.monic()


def coeff_poly(f: BiPoly, var, k: int) -> Poly:
    """Coefficient of ``var**k`` in a BiPoly, as a UniPoly in the other variable."""
    other = Y if var == X else X
    idx = f.gens.index(var)
    rep = {}
    for m, c in f.terms():
        if m[idx] == k:
            rep[(m[1 - idx],)] = c
    if not rep:
        return Poly(0, other, domain=QQ)
    return Poly.from_dict(rep, other, domain=QQ)


def as_bipoly(f: Poly) -> BiPoly:
    """Lift a UniPoly in x or y (or a Poly in a subset of (x, y)) to a BiPoly."""
    return Poly(f.as_expr(), *GENS, domain=QQ)


def rename(f: Poly, mapping: dict) -> Poly:
    """Substitute generator symbols; the result has the generators given by the mapping's image order."""
    expr = f.as_expr().subs(mapping, simultaneous=True)
    gens = [mapping.get(g, g) for g in f.gens]
    return Poly(expr, *gens, domain=QQ)


_ALLOWED_VARS = (X, Y, Z, T)


def resultant(f: Poly, g: Poly, var) -> Poly:
    """Sylvester resultant of f and g eliminating ``var``.

    Uses sympy's subresultant PRS.  The result is a Poly in the remaining
    generators of ``f`` and ``g`` (a constant Poly in those generators when
    nothing is left, or in ``var`` itself when no generators remain).
    """
    if var not in _ALLOWED_VARS:
        raise ValueError(f"cannot eliminate {var!r}; allowed symbols are x, y, z, t")
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of a zero polynomial")
    gens = []
    for h in (f, g):
        for s in h.gens:
            if s != var and s not in gens:
                gens.append(s)
    gens.sort(key=lambda s: _ALLOWED_VARS.index(s) if s in _ALLOWED_VARS else 99)
    F = Poly(f.as_expr(), var, *gens, domain=QQ)
    G = Poly(g.as_expr(), var, *gens, domain=QQ)
    if F.degree(var) == 0 and G.degree(var) == 0:
        # convention: Res of two constants in var is 1
        return Poly(1, *(gens or [var]), domain=QQ)
    if F.degree(var) == 0:
        r = Poly(f.as_expr() ** G.degree(var), *(gens or [var]), domain=QQ)
        return r
    if G.degree(var) == 0:
        r = Poly(g.as_expr() ** F.degree(var), *(gens or [var]), domain=QQ)
        return r
    r = F.resultant(G)
    if not gens:
        return Poly(r, var, domain=QQ)
    return Poly(r.as_expr() if isinstance(r, Poly) else r, *gens, domain=QQ)


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct irreducible factors, canonically normalized."""
    if f.is_zero:
        raise ValueError("squarefree part of the zero polynomial")
    if is_constant(f):
        return Poly(1, *f.gens, domain=QQ)
    return canonical(f.sqf_part())


def is_squarefree(f: Poly) -> bool:
    if f.is_zero:
        return False
    return f.sqf_part().total_degree() == f.total_degree()


def factor_univariate(f: Poly) -> tuple[Fraction, list[tuple[Poly, int]]]:
    """Factor over the rationals.

    Returns ``(content, [(q, m), ...])`` with each ``q`` canonical
    (primitive, positive leading coefficient) and irreducible, such that
    ``content * prod(q**m) == f``.  Factors are sorted by degree, then by
    their coefficient list, so the output is deterministic.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if len(f.gens) != 1:
        raise ValueError("factor_univariate expects a univariate polynomial")
    _, facs = f.factor_list()
    out = []
    prod = Poly(1, *f.gens, domain=QQ)
    for q, m in facs:
        q = canonical(q.set_domain(QQ))
        out.append((q, m))
        prod = prod * q**m
    content = to_fraction(f.LC()) / to_fraction(prod.LC())
    out.sort(key=lambda qm: (qm[0].degree(), [to_fraction(c) for c in qm[0].all_coeffs()], qm[1]))
    return content, out


def irreducible_factors(f: Poly) -> list[Poly]:
    if is_constant(f):
        return []
    return [q for q, _ in factor_univariate(f)[1]]


def content_in(f: BiPoly, var) -> Poly:
    """Gcd of the coefficients of f viewed as a polynomial in ``var``.

    This is the product of the factors of f not involving ``var``, returned
    canonically as a UniPoly in the other variable.
    """
    other = Y if var == X else X
    g = Poly(0, other, domain=QQ)
    for k in range(degree_in(f, var) + 1):
        c = coeff_poly(f, var, k)
        if not c.is_zero:
            g = c if g.is_zero else g.gcd(c)
            if is_constant(g):
                return Poly(1, other, domain=QQ)
    return canonical(g)


def eval_at(f: BiPoly, var, value) -> Poly:
    """Substitute a rational value for one variable, giving a UniPoly in the other."""
    other = Y if var == X else X
    v = to_qq(value)
    r = f.eval(var, v)
    return Poly(r.as_expr() if isinstance(r, Poly) else r, other, domain=QQ)


def is_homogeneous(f: BiPoly) -> bool:
    if f.is_zero:
        return True
    degs = {sum(m) for m, _ in f.terms()}
    return len(degs) == 1


# ---------------------------------------------------------------------------
# bihomogeneous forms


class Chart(enum.Enum):
    """Affine charts of P^1 x P^1, named by which coordinates are set to 1."""

    AFFINE = (0, 0)     # x0 = 1, y0 = 1: coordinates (x1, y1) = (X, Y)
    X_INFINITE = (1, 0)  # x1 = 1, y0 = 1: coordinates (x0, y1)
    Y_INFINITE = (0, 1)  # x0 = 1, y1 = 1: coordinates (x1, y0)
    BOTH_INFINITE = (1, 1)  # x1 = 1, y1 = 1: coordinates (x0, y0)


@dataclass(frozen=True)
class BiHomPoly:
    """Bihomogeneous form in (x0:x1) x (y0:y1), terms keyed by (a0, a1, b0, b1)."""

    terms: tuple[tuple[tuple[int, int, int, int], Fraction], ...]
    bidegree: tuple[int, int]

    def as_dict(self) -> dict[tuple[int, int, int, int], Fraction]:
        return dict(self.terms)

    def __str__(self) -> str:
        parts = []
        for (a0, a1, b0, b1), c in self.terms:
            mons = [f"{v}^{e}" if e > 1 else v for v, e in
                    (("x0", a0), ("x1", a1), ("y0", b0), ("y1", b1)) if e]
            parts.append(f"{c}*" + "*".join(mons) if mons else str(c))
        return " + ".join(parts) or "0"


def bihomogenize(p: BiPoly) -> BiHomPoly:
    p = bipoly(p)
    if p.is_zero:
        return BiHomPoly((), (0, 0))
    dx, dy = degree_in(p, X), degree_in(p, Y)
    out = {}
    for (i, j), c in p.terms():
        out[(dx - i, i, dy - j, j)] = to_fraction(c)
    return BiHomPoly(tuple(sorted(out.items(), reverse=True)), (dx, dy))


def dehomogenize(P: BiHomPoly, chart: Chart = Chart.AFFINE) -> BiPoly:
    """Set one coordinate of each factor to 1.

    The surviving coordinates become the generators ``(x, y)`` of the
    returned BiPoly: on ``AFFINE`` these are (x1, y1); on ``X_INFINITE``,
    (x0, y1); on ``Y_INFINITE``, (x1, y0); on ``BOTH_INFINITE``, (x0, y0).
    """
    sx, sy = chart.value
    rep = {}
    for (a0, a1, b0, b1), c in P.terms:
        i = a1 if sx == 0 else a0
        j = b1 if sy == 0 else b0
        rep[(i, j)] = rep.get((i, j), Fraction(0)) + c
    return bipoly(rep)


def chart_poly(p: BiPoly, chart: Chart) -> BiPoly:
    return dehomogenize(bihomogenize(p), chart)


def exquo(f: Poly, g: Poly) -> BiPoly:
    """Exact quotient f / g as BiPolys; raises if g does not divide f."""
    q, r = bipoly(f).div(bipoly(g))
    if not r.is_zero:
        raise ArithmeticError("exquo: inexact division")
    return q


def poly_product(polys: Iterable[Poly], gens) -> Poly:
    out = Poly(1, *gens, domain=QQ)
    for q in polys:
        out = out * q
    return out
