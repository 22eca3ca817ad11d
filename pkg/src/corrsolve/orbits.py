"""Orbits of a correspondence, computed on projection polynomials.

An orbit is stored through the squarefree polynomials whose roots are its
first and second coordinates (plus flags for infinity).  One expansion round
replaces b by sqf(b * Res_X(a, p)) and a by sqf(a * Res_Y(b, p)); a fixpoint
is a union of full orbits, stable under conjugation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction

from sympy import QQ, Poly

from .algebraic import (INF, CurvePoint, _separate, as_proj, field_of, isolate_irreducible, point_on_curve,
                        vanishes_at_pair)
from .correspondence import Correspondence
from .parser import print_uni
from .poly import X, Y, canonical, irreducible_factors, is_constant, resultant, squarefree_part

DEFAULT_DEGREE_CAP = 64


class OrbitStatus(enum.Enum):
    CLOSED = "closed"
    CAP_EXCEEDED = "cap-exceeded"


def _one(var) -> Poly:
    return Poly(1, var, domain=QQ)


def _sqf(f: Poly) -> Poly:
    return _one(f.gen) if is_constant(f) else squarefree_part(f)


def _common(f: Poly, g: Poly) -> Poly:
    """gcd of two univariate polynomials in the same variable (1 when either is constant)."""
    if is_constant(f) or is_constant(g):
        return _one(f.gen)
    h = f.gcd(g)
    return _one(f.gen) if is_constant(h) else h


@dataclass(frozen=True)
class OrbitBundle:
    a_poly: Poly
    b_poly: Poly
    a_inf: bool
    b_inf: bool
    status: OrbitStatus
    cap: int | None = None
    rounds: int = 0
    points: tuple[CurvePoint, ...] | None = None

    @property
    def closed(self) -> bool:
        return self.status is OrbitStatus.CLOSED

    @property
    def meets_infinity(self) -> bool:
        return self.a_inf or self.b_inf

    def describe(self) -> dict:
        return {
            "status": self.status.value,
            "cap": self.cap,
            "a_poly": print_uni(self.a_poly),
            "b_poly": print_uni(self.b_poly),
            "a_inf": self.a_inf,
            "b_inf": self.b_inf,
            "rounds": self.rounds,
        }


def _expand(C: Correspondence, a: Poly, b: Poly, a_inf: bool, b_inf: bool, cap: int) -> OrbitBundle:
    p = C.p
    lc_y, lc_x = C.lc_y, C.lc_x
    rounds = 0
    while True:
        rounds += 1
        old = (a, b, a_inf, b_inf)
        # second coordinates reachable from A
        nb = b
        if not is_constant(a):
            nb = nb * Poly(resultant(a, p, X).as_expr(), Y, domain=QQ)
            if not is_constant(_common(a, lc_y)):
                b_inf = True
        if a_inf:
            if not is_constant(lc_x):
                nb = nb * lc_x
            if lc_x.degree() < C.dy:
                b_inf = True
        b = _sqf(nb)
        # first coordinates reachable from B
        na = a
        if not is_constant(b):
            na = na * Poly(resultant(b, p, Y).as_expr(), X, domain=QQ)
            if not is_constant(_common(b, lc_x)):
                a_inf = True
        if b_inf:
            if not is_constant(lc_y):
                na = na * lc_y
            if lc_y.degree() < C.dx:
                a_inf = True
        a = _sqf(na)
        if (a, b, a_inf, b_inf) == old:
            return OrbitBundle(a, b, a_inf, b_inf, OrbitStatus.CLOSED, cap, rounds)
        if a.degree() + b.degree() > cap:
            return OrbitBundle(a, b, a_inf, b_inf, OrbitStatus.CAP_EXCEEDED, cap, rounds)


def _coord_poly(z, var) -> tuple[Poly, bool]:
    if z is INF:
        return _one(var), True
    return canonical(z.minpoly_in(var)), False


def orbit_closure(C: Correspondence, start: CurvePoint, degree_cap: int = DEFAULT_DEGREE_CAP) -> OrbitBundle:
    """Closure of the orbit of ``start`` (with its conjugates when start is irrational)."""
    if not point_on_curve(C.p, start):
        raise ValueError(f"start point {start!r} is not on the curve")
    a, a_inf = _coord_poly(start.first, X)
    b, b_inf = _coord_poly(start.second, Y)
    return _expand(C, a, b, a_inf, b_inf, degree_cap)


def orbit_over(C: Correspondence, x, degree_cap: int = DEFAULT_DEGREE_CAP) -> OrbitBundle:
    """Orbit containing every point of the fiber over the first coordinate ``x``.

    For rational x this is exactly one orbit, since all points sharing a
    first coordinate are equivalent.
    """
    z = as_proj(x)
    a, a_inf = _coord_poly(z, X)
    return _expand(C, a, _one(Y), a_inf, False, degree_cap)


# ---------------------------------------------------------------------------
# counting and materialization


def _pair_blocks(C: Correspondence, bundle: OrbitBundle):
    """For each pair of irreducible factors (q | a, r | b): the gcd of p(alpha, Y) and r over Q(alpha)."""
    for q in irreducible_factors(bundle.a_poly):
        alpha0 = isolate_irreducible(q)[0]
        K = field_of(alpha0)
        pk = K.specialize(C.p, X)
        for r in irreducible_factors(bundle.b_poly):
            rk = K.from_rational_poly(r)
            D = K.pgcd(pk, rk)
            if K.pdeg(D) >= 1:
                yield q, r, K, D, rk


def orbit_size(C: Correspondence, bundle: OrbitBundle) -> int:
    """Exact |(A u {inf}) x (B u {inf}) n C| without isolating any root."""
    if not bundle.closed:
        raise ValueError("orbit size is only defined for closed bundles")
    n = sum(q.degree() * K.pdeg(D) for q, _, K, D, _ in _pair_blocks(C, bundle))
    if bundle.b_inf:
        n += _common(bundle.a_poly, C.lc_y).degree()
    if bundle.a_inf:
        n += _common(bundle.b_poly, C.lc_x).degree()
    if bundle.a_inf and bundle.b_inf and C.corner == 0:
        n += 1
    return n


def materialize_points(C: Correspondence, bundle: OrbitBundle) -> OrbitBundle:
    """Return the bundle with its explicit point list filled in (checked against ``orbit_size``)."""
    if not bundle.closed:
        raise ValueError("only closed bundles can be materialized")
    pts: list[CurvePoint] = []
    for q, r, K, D, rk in _pair_blocks(C, bundle):
        betas = isolate_irreducible(r)
        full = K.pdeg(D) == K.pdeg(rk)
        E = None if full else K.pdivmod(rk, D)[0]
        for alpha in isolate_irreducible(q):
            for beta in betas:
                if full:
                    pts.append(CurvePoint(alpha, beta, "exact"))
                elif alpha.is_rational or beta.is_rational:
                    if vanishes_at_pair(C.p, alpha, beta):
                        pts.append(CurvePoint(alpha, beta, "exact"))
                elif _separate(K, D, E, alpha, beta):
                    pts.append(CurvePoint(alpha, beta, "certified-interval"))
    if bundle.b_inf:
        g = _common(bundle.a_poly, C.lc_y)
        if not is_constant(g):
            pts.extend(CurvePoint(al, INF) for q in irreducible_factors(g) for al in isolate_irreducible(q))
    if bundle.a_inf:
        g = _common(bundle.b_poly, C.lc_x)
        if not is_constant(g):
            pts.extend(CurvePoint(INF, be) for r in irreducible_factors(g) for be in isolate_irreducible(r))
    if bundle.a_inf and bundle.b_inf and C.corner == 0:
        pts.append(CurvePoint(INF, INF))
    expected = orbit_size(C, bundle)
    if len(pts) != expected:
        raise AssertionError(f"materialized {len(pts)} points, exact count is {expected}")
    return replace(bundle, points=tuple(pts))


def orbit_size_bound(C: Correspondence, n: int) -> int:
    """max(deg_x p, deg_y p) ** (2(n+1)): size bound for orbits of a period-n correspondence."""
    if n < 1:
        raise ValueError("period must be positive")
    return max(C.dx, C.dy) ** (2 * (n + 1))


# ---------------------------------------------------------------------------
# reports


@dataclass
class OrbitReport:
    bundle: OrbitBundle
    size: int | None
    meets_omega: bool
    meets_infinity: bool

    def as_dict(self) -> dict:
        d = self.bundle.describe()
        d.update(size=self.size, meets_omega=self.meets_omega, meets_infinity=self.meets_infinity)
        if self.bundle.points is not None:
            d["points"] = [repr(pt) for pt in self.bundle.points]
        return d


def orbit_report(C: Correspondence, bundle: OrbitBundle, omega=None, materialize: bool = False) -> OrbitReport:
    from .omega import avoids_omega, omega as compute_omega

    om = omega if omega is not None else compute_omega(C)
    meets = not avoids_omega(om, bundle)
    if bundle.closed and materialize:
        bundle = materialize_points(C, bundle)
    size = orbit_size(C, bundle) if bundle.closed else None
    return OrbitReport(bundle, size, meets, bundle.meets_infinity)


def rational_points_of_height(H: int) -> list[Fraction]:
    """Rationals n/d in lowest terms with max(|n|, d) <= H, ordered by height then value."""
    pts = {Fraction(n, d) for d in range(1, max(H, 1) + 1) for n in range(-H, H + 1)}
    return sorted(pts, key=lambda v: (max(abs(v.numerator), v.denominator), v))


__all__ = [
    "DEFAULT_DEGREE_CAP", "OrbitBundle", "OrbitReport", "OrbitStatus", "materialize_points",
    "orbit_closure", "orbit_over", "orbit_report", "orbit_size", "orbit_size_bound",
    "rational_points_of_height",
]
