"""The correspondence defined by p(X, Y) and its standing hypotheses."""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass, field

from sympy import QQ, Poly
from sympy.polys.matrices import DomainMatrix

from .algebraic import INF, CurvePoint, ProjPoint, field_of, isolate_roots, roots_over
from .poly import (X, Y, BiHomPoly, Chart, bihomogenize, bipoly, chart_poly, coeff_poly, content_in,
                   degree_in, eval_at, exquo, irreducible_factors, is_constant, is_squarefree, resultant)


class HypothesisWarning(UserWarning):
    """Input violates a standing hypothesis (absolute irreducibility or smoothness)."""


@dataclass
class HypothesisReport:
    absolutely_irreducible: str  # "yes" | "no" | "asserted"
    absolute_factors: int | None
    smooth: bool | None
    singular_points: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.absolutely_irreducible in ("yes", "asserted") and bool(self.smooth)

    def summary(self) -> dict:
        return {
            "absolutely_irreducible": self.absolutely_irreducible,
            "absolute_factors": self.absolute_factors,
            "smooth": self.smooth,
            "singular_points": [repr(pt) for pt in self.singular_points],
        }


@dataclass(frozen=True, eq=False)
class Correspondence:
    p: Poly
    P: BiHomPoly
    dx: int
    dy: int
    report: HypothesisReport = field(compare=False)

    @property
    def lc_y(self) -> Poly:
        """Coefficient of Y**dy, a polynomial in X; its roots have infinity in their fiber."""
        return coeff_poly(self.p, Y, self.dy)

    @property
    def lc_x(self) -> Poly:
        """Coefficient of X**dx, a polynomial in Y; its roots lie over infinity."""
        return coeff_poly(self.p, X, self.dx)

    @property
    def corner(self):
        """Coefficient of X**dx * Y**dy; zero iff (inf, inf) is on the curve."""
        return self.p.coeff_monomial(X**self.dx * Y**self.dy)

    @functools.cached_property
    def px(self) -> Poly:
        return self.p.diff(X)

    @functools.cached_property
    def py(self) -> Poly:
        return self.p.diff(Y)

    @functools.cached_property
    def transpose(self) -> "Correspondence":
        q = bipoly(self.p.as_expr().subs({X: Y, Y: X}, simultaneous=True))
        return Correspondence(q, bihomogenize(q), self.dy, self.dx, self.report)

    def __repr__(self) -> str:
        from .parser import print_canonical

        return f"Correspondence({print_canonical(self.p)!r})"


def _validate(p: Poly) -> Poly:
    p = bipoly(p)
    if p.is_zero:
        raise ValueError("p must be nonzero")
    if degree_in(p, X) < 1 or degree_in(p, Y) < 1:
        raise ValueError("p must depend on both X and Y")
    if not is_squarefree(p):
        raise ValueError("p must be squarefree (fibers are point sets)")
    for var in (X, Y):
        c = content_in(p, var)
        if not is_constant(c):
            raise ValueError(f"p has the factor {c.as_expr()} in a single variable: its fibers are not finite")
    return p


def new_correspondence(p: Poly, assume_irreducible: bool = False) -> Correspondence:
    p = _validate(p)
    dx, dy = degree_in(p, X), degree_in(p, Y)
    report = HypothesisReport("asserted" if assume_irreducible else "no", None, None)
    C = Correspondence(p, bihomogenize(p), dx, dy, report)
    if not assume_irreducible:
        n = absolute_factor_count(p)
        report.absolute_factors = n
        report.absolutely_irreducible = "yes" if n == 1 else "no"
    smooth, sing = is_smooth(C)
    report.smooth = smooth
    report.singular_points = sing
    if not report.holds:
        warnings.warn(f"{C!r}: hypotheses fail ({report.summary()}); "
                      "conclusions that depend on them are marked conditional", HypothesisWarning, stacklevel=2)
    return C


# ---------------------------------------------------------------------------
# absolute factor count


def _gao_dimension(f: Poly) -> int:
    """Dimension of {(g, h)} with d/dy(g/f) = d/dx(h/f) under Gao's degree bounds.

    Requires gcd(f, f_x) = 1.  The dimension equals the number of absolutely
    irreducible factors of f.
    """
    m, n = degree_in(f, X), degree_in(f, Y)
    fx, fy = f.diff(X), f.diff(Y)
    cols = []
    for i in range(m):
        for j in range(n + 1):
            g = Poly(X**i * Y**j, X, Y, domain=QQ)
            cols.append(f * g.diff(Y) - g * fy)
    for i in range(m + 1):
        for j in range(n):
            h = Poly(X**i * Y**j, X, Y, domain=QQ)
            cols.append(h * fx - f * h.diff(X))
    monos = sorted({mono for c in cols for mono, _ in c.terms()})
    index = {mono: r for r, mono in enumerate(monos)}
    rows = [[QQ(0)] * len(cols) for _ in monos]
    for k, c in enumerate(cols):
        for mono, v in c.terms():
            rows[index[mono]][k] = v
    if not rows:
        return len(cols)
    M = DomainMatrix(rows, (len(rows), len(cols)), QQ)
    return len(cols) - M.rank()


def absolute_factor_count(p: Poly) -> int:
    """Number of factors of p over the algebraic closure of the rationals."""
    p = bipoly(p)
    if p.is_zero or not is_squarefree(p):
        raise ValueError("absolute_factor_count needs a nonzero squarefree polynomial")
    count = 0
    # single-variable factors split into linear factors over the closure
    for var in (Y, X):
        c = content_in(p, var)
        if not is_constant(c):
            count += c.degree()
            p = exquo(p, c)
    if is_constant(p):
        return count
    if degree_in(p, X) == 0:
        return count + degree_in(p, Y)
    if degree_in(p, Y) == 0:
        return count + degree_in(p, X)
    g = p.gcd(p.diff(X))
    if not is_constant(g):  # cannot happen once single-variable factors are gone
        raise AssertionError("unexpected common factor of p and p_x")
    return count + _gao_dimension(p)


# ---------------------------------------------------------------------------
# fibers and points at infinity


def fiber(C: Correspondence, z: ProjPoint, side: str = "first") -> list[ProjPoint]:
    """C(z) for side='first', its transpose for side='second'; distinct points of P^1."""
    if side == "second":
        return fiber(C.transpose, z, "first")
    if side != "first":
        raise ValueError("side must be 'first' or 'second'")
    if z is INF:
        lead = C.lc_x
        out: list[ProjPoint] = [] if is_constant(lead) else isolate_roots(lead)
        if degree_in(lead, Y) < C.dy:
            out.append(INF)
        return out
    out = list(roots_over(z, C.p))
    if z.is_root_of(C.lc_y):
        out.append(INF)
    return out


def points_at_infinity(C: Correspondence) -> list[CurvePoint]:
    pts: list[CurvePoint] = []
    if not is_constant(C.lc_x):
        pts.extend(CurvePoint(INF, b) for b in isolate_roots(C.lc_x))
    if not is_constant(C.lc_y):
        pts.extend(CurvePoint(a, INF) for a in isolate_roots(C.lc_y))
    if C.corner == 0:
        pts.append(CurvePoint(INF, INF))
    return pts


# ---------------------------------------------------------------------------
# smoothness


def _univariate_common_roots(polys) -> Poly | None:
    g = None
    for f in polys:
        if f.is_zero:
            continue
        g = f if g is None else g.gcd(f)
    return g


def _singular_at_infinity(C: Correspondence) -> list[CurvePoint]:
    out = []
    p = C.p
    # (inf, beta): chart coordinates (u = x0, Y)
    q = chart_poly(p, Chart.X_INFINITE)
    g = _univariate_common_roots([eval_at(q, X, 0), eval_at(q.diff(X), X, 0), eval_at(q.diff(Y), X, 0)])
    if g is not None and not is_constant(g):
        out.extend(CurvePoint(INF, b) for b in isolate_roots(g))
    # (alpha, inf): chart coordinates (X, v = y0)
    q = chart_poly(p, Chart.Y_INFINITE)
    g = _univariate_common_roots([eval_at(q, Y, 0), eval_at(q.diff(Y), Y, 0), eval_at(q.diff(X), Y, 0)])
    if g is not None and not is_constant(g):
        out.extend(CurvePoint(a, INF) for a in isolate_roots(g))
    q = chart_poly(p, Chart.BOTH_INFINITE)
    if C.corner == 0:
        c0 = q.coeff_monomial(1)
        cu = q.coeff_monomial(X)
        cv = q.coeff_monomial(Y)
        if c0 == 0 and cu == 0 and cv == 0:
            out.append(CurvePoint(INF, INF))
    return out


def _singular_affine(C: Correspondence) -> list[CurvePoint]:
    p, px, py = C.p, C.px, C.py
    cands = []
    for d in (px, py):
        if d.is_zero:
            continue
        r = resultant(p, d, Y)
        if r.is_zero:
            raise ValueError("shared factor between p and a partial derivative")
        cands.append(Poly(r.as_expr(), X, domain=QQ))
    g = _univariate_common_roots(cands)
    out = []
    if g is None or is_constant(g):
        return out
    for q in irreducible_factors(g):
        K = field_of(isolate_roots(q)[0])
        G = K.specialize(p, X)
        for d in (px, py):
            G = K.pgcd(G, K.specialize(d, X))
        if K.pdeg(G) < 1:
            continue
        Glift = K.lift(G, X)
        for a in isolate_roots(q):
            out.extend(CurvePoint(a, b) for b in roots_over(a, Glift))
    return out


def is_smooth(C: Correspondence) -> tuple[bool, list[CurvePoint]]:
    """Smoothness on all four charts; returns (smooth, singular points), points at infinity first."""
    sing = _singular_at_infinity(C) + _singular_affine(C)
    return (not sing), sing


__all__ = [
    "Correspondence", "HypothesisReport", "HypothesisWarning", "absolute_factor_count", "fiber",
    "is_smooth", "new_correspondence", "points_at_infinity",
]
