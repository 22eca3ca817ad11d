"""Algebraic numbers, points of P^1 and points of the curve.

An ``AlgebraicNumber`` is an irreducible rational polynomial together with
an isolating real interval or complex rectangle (rational endpoints) for one
of its roots; rational numbers are stored exactly.  Keeping the defining
polynomial irreducible makes equality a matter of comparing minimal
polynomials and then separating conjugates by refinement.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from sympy import QQ, ZZ, Poly
from sympy.polys.rootisolation import dup_count_complex_roots, dup_isolate_all_roots_sqf

from .numfield import THETA, NumberField
from .poly import (X, Y, bipoly, canonical, coeff_poly, degree_in, eval_at, irreducible_factors,
                   resultant, to_fraction)


def default_precision() -> int:
    return int(os.environ.get("CORRSOLVE_PRECISION", "53"))


# ---------------------------------------------------------------------------
# complex interval arithmetic


def _imul(a0, a1, b0, b1):
    ps = (a0 * b0, a0 * b1, a1 * b0, a1 * b1)
    return min(ps), max(ps)


@dataclass(frozen=True)
class CBox:
    """Closed rectangle [re_lo, re_hi] + i[im_lo, im_hi] with rational endpoints."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction = Fraction(0)
    im_hi: Fraction = Fraction(0)

    @classmethod
    def point(cls, v) -> "CBox":
        v = Fraction(v)
        return cls(v, v, Fraction(0), Fraction(0))

    def __add__(self, o: "CBox") -> "CBox":
        return CBox(self.re_lo + o.re_lo, self.re_hi + o.re_hi, self.im_lo + o.im_lo, self.im_hi + o.im_hi)

    def __mul__(self, o: "CBox") -> "CBox":
        ac = _imul(self.re_lo, self.re_hi, o.re_lo, o.re_hi)
        bd = _imul(self.im_lo, self.im_hi, o.im_lo, o.im_hi)
        ad = _imul(self.re_lo, self.re_hi, o.im_lo, o.im_hi)
        bc = _imul(self.im_lo, self.im_hi, o.re_lo, o.re_hi)
        return CBox(ac[0] - bd[1], ac[1] - bd[0], ad[0] + bc[0], ad[1] + bc[1])

    def contains_zero(self) -> bool:
        return self.re_lo <= 0 <= self.re_hi and self.im_lo <= 0 <= self.im_hi

    def contains(self, o: "CBox") -> bool:
        return (self.re_lo <= o.re_lo and o.re_hi <= self.re_hi
                and self.im_lo <= o.im_lo and o.im_hi <= self.im_hi)

    def disjoint(self, o: "CBox") -> bool:
        return (self.re_hi < o.re_lo or o.re_hi < self.re_lo
                or self.im_hi < o.im_lo or o.im_hi < self.im_lo)

    def hull(self, o: "CBox") -> "CBox":
        return CBox(min(self.re_lo, o.re_lo), max(self.re_hi, o.re_hi),
                    min(self.im_lo, o.im_lo), max(self.im_hi, o.im_hi))

    @property
    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    @property
    def center(self) -> complex:
        return complex(float((self.re_lo + self.re_hi) / 2), float((self.im_lo + self.im_hi) / 2))

    @property
    def is_point(self) -> bool:
        return self.width == 0


def horner_box(coeffs_high_first, z: CBox) -> CBox:
    acc = CBox.point(0)
    for c in coeffs_high_first:
        acc = acc * z + (c if isinstance(c, CBox) else CBox.point(c))
    return acc


def eval_uni_box(f: Poly, z: CBox) -> CBox:
    return horner_box([to_fraction(c) for c in f.all_coeffs()], z)


# ---------------------------------------------------------------------------
# algebraic numbers


class Infinity:
    """The point at infinity of P^1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


class AlgebraicNumber:
    """A root of an irreducible rational polynomial, pinned by an isolating box."""

    def __init__(self, minpoly: Poly, interval=None, value: Fraction | None = None):
        mp = canonical(minpoly)
        self.minpoly = Poly(mp.as_expr().subs(mp.gen, THETA), THETA, domain=QQ)
        self._key = tuple(to_fraction(c) for c in self.minpoly.all_coeffs())
        if self.minpoly.degree() == 1:
            a, b = self._key
            value = -b / a
        self.value = value
        self._iv = interval
        if value is None and interval is None:
            raise ValueError("irrational algebraic number needs an isolating interval")

    @classmethod
    def rational(cls, v) -> "AlgebraicNumber":
        v = Fraction(v)
        return cls(Poly([v.denominator, -v.numerator], THETA, domain=QQ))

    # -- structure ---------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.value is not None

    @property
    def is_real(self) -> bool:
        return self.is_rational or not hasattr(self._iv, "ax")

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    def minpoly_in(self, var) -> Poly:
        return Poly(self.minpoly.as_expr().subs(THETA, var), var, domain=QQ)

    @property
    def box(self) -> CBox:
        if self.is_rational:
            return CBox.point(self.value)
        iv = self._iv
        if hasattr(iv, "ax"):
            return CBox(to_fraction(iv.ax), to_fraction(iv.bx), to_fraction(iv.ay), to_fraction(iv.by))
        return CBox(to_fraction(iv.a), to_fraction(iv.b))

    def refine(self) -> None:
        if not self.is_rational:
            self._iv = self._iv.refine()

    def refine_to(self, width: Fraction) -> None:
        while self.box.width > width:
            self.refine()

    def approx(self, digits: int = 12) -> complex:
        if self.is_rational:
            return complex(float(self.value))
        self.refine_to(Fraction(1, 10**digits))
        return self.box.center

    def is_root_of(self, f: Poly) -> bool:
        """Exact test f(self) == 0 for a univariate rational polynomial."""
        if f.is_zero:
            return True
        if len(f.gens) != 1:
            raise ValueError("is_root_of expects a univariate polynomial")
        return f.rem(self.minpoly_in(f.gen)).is_zero

    # -- comparisons ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return equals(self, other)

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if self.is_rational:
            return str(self.value)
        from .parser import print_uni

        z = self.approx(8)
        re, im = round(z.real, 7) + 0.0, round(z.imag, 7) + 0.0
        near = f"{re:.6g}" if self.is_real else f"{re:.6g}{im:+.6g}i"
        return f"root of {print_uni(self.minpoly_in(Y))} near {near}"


ProjPoint = Union[AlgebraicNumber, Infinity]


def _int_coeffs(q: Poly) -> list:
    return [ZZ(int(to_fraction(c))) for c in canonical(q).all_coeffs()]


def _isolate_irreducible(q: Poly) -> list[AlgebraicNumber]:
    if q.degree() == 1:
        return [AlgebraicNumber(q)]
    real, cplx = dup_isolate_all_roots_sqf(_int_coeffs(q), ZZ, blackbox=True)
    out = [AlgebraicNumber(q, iv) for iv in list(real) + list(cplx)]
    out.sort(key=lambda a: (a.box.re_lo, a.box.im_lo))
    return out


@functools.lru_cache(maxsize=4096)
def _isolate_cached(key: tuple) -> tuple:
    q = Poly([QQ(c.numerator, c.denominator) for c in key], THETA, domain=QQ)
    return tuple((iv._iv, iv.value) for iv in _isolate_irreducible(q))


def isolate_irreducible(q: Poly) -> list[AlgebraicNumber]:
    q = canonical(q)
    key = tuple(to_fraction(c) for c in q.all_coeffs())
    return [AlgebraicNumber(q, iv, v) for iv, v in _isolate_cached(key)]


def isolate_roots(f: Poly) -> list[AlgebraicNumber]:
    """One AlgebraicNumber per distinct complex root of f."""
    if f.is_zero:
        raise ValueError("cannot isolate the roots of the zero polynomial")
    out = []
    for q in irreducible_factors(f):
        out.extend(isolate_irreducible(q))
    return out


def from_box(f: Poly, box: CBox, max_steps: int = 200) -> AlgebraicNumber:
    """The unique root of f inside ``box``; raises if there is none or several."""
    cands = isolate_roots(f)
    for _ in range(max_steps):
        inside = [a for a in cands if box.contains(a.box)]
        touching = [a for a in cands if not box.disjoint(a.box)]
        if len(touching) == len(inside):
            if len(inside) == 1:
                return inside[0]
            raise ValueError(f"box contains {len(inside)} roots of the polynomial, expected 1")
        for a in touching:
            if a not in inside:
                a.refine()
    raise ValueError("could not decide which root lies in the box (root on its boundary?)")


def _count_in_box(a: AlgebraicNumber, box: CBox) -> int:
    coeffs = _int_coeffs(a.minpoly)
    if a.is_real and box.im_lo == box.im_hi == 0:
        return Poly(a.minpoly).count_roots(box.re_lo, box.re_hi)
    return dup_count_complex_roots(coeffs, ZZ, inf=(QQ(box.re_lo.numerator, box.re_lo.denominator),
                                                      QQ(box.im_lo.numerator, box.im_lo.denominator)),
                                   sup=(QQ(box.re_hi.numerator, box.re_hi.denominator),
                                        QQ(box.im_hi.numerator, box.im_hi.denominator)))


def equals(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """Exact equality: same minimal polynomial and the same root of it."""
    if a is b:
        return True
    if a._key != b._key:
        return False
    if a.is_rational:
        return a.value == b.value
    if a.is_real != b.is_real:
        return False
    while True:
        ba, bb = a.box, b.box
        if ba.disjoint(bb):
            return False
        if _count_in_box(a, ba.hull(bb)) == 1:
            return True
        a.refine()
        b.refine()


# ---------------------------------------------------------------------------
# points on the curve


@dataclass(frozen=True)
class CurvePoint:
    first: ProjPoint
    second: ProjPoint
    evidence: str = field(default="exact", compare=False)

    @property
    def is_finite(self) -> bool:
        return self.first is not INF and self.second is not INF

    def __repr__(self) -> str:
        return f"({self.first!r}, {self.second!r})"


def as_proj(v) -> ProjPoint:
    if v is INF or isinstance(v, AlgebraicNumber):
        return v
    return AlgebraicNumber.rational(Fraction(v))


@functools.lru_cache(maxsize=1024)
def _field(key: tuple) -> NumberField:
    return NumberField(Poly([QQ(c.numerator, c.denominator) for c in key], THETA, domain=QQ))


def field_of(a: AlgebraicNumber) -> NumberField:
    return _field(a._key)


def eval_kpoly_box(coeffs, theta: CBox, z: CBox) -> CBox:
    """Enclosure of sum_k c_k(theta) z^k for KPoly coefficients c_k."""
    vals = [eval_uni_box(c, theta) for c in coeffs]
    return horner_box(list(reversed(vals)), z)


def _separate(K: NumberField, D, E, alpha: AlgebraicNumber, beta: AlgebraicNumber) -> bool:
    """beta is a root of exactly one of D, E over Q(alpha); return True if it is D."""
    while True:
        if not eval_kpoly_box(D, alpha.box, beta.box).contains_zero():
            return False
        if not eval_kpoly_box(E, alpha.box, beta.box).contains_zero():
            return True
        alpha.refine()
        beta.refine()


def vanishes_at_pair(F: Poly, alpha: AlgebraicNumber, beta: AlgebraicNumber) -> bool:
    """Exact decision of F(alpha, beta) == 0 for a BiPoly F."""
    F = bipoly(F)
    if F.is_zero:
        return True
    if alpha.is_rational:
        return beta.is_root_of(eval_at(F, X, alpha.value))
    if beta.is_rational:
        return alpha.is_root_of(eval_at(F, Y, beta.value))
    K = field_of(alpha)
    G = K.specialize(F, X)
    if not G:
        return True
    mb = K.from_rational_poly(beta.minpoly)
    D = K.pgcd(G, mb)
    if K.pdeg(D) < 1:
        return False
    if K.pdeg(D) == K.pdeg(mb):
        return True
    E = K.pdivmod(mb, D)[0]
    return _separate(K, D, E, alpha, beta)


def roots_over(alpha: AlgebraicNumber, G: Poly) -> list[AlgebraicNumber]:
    """Distinct finite roots beta of G(alpha, Y) for a BiPoly G; G(alpha, Y) must not vanish identically."""
    G = bipoly(G)
    if alpha.is_rational:
        g = eval_at(G, X, alpha.value)
        if g.is_zero:
            raise ValueError("polynomial vanishes identically on the fiber")
        return [] if g.degree() < 1 else isolate_roots(g)
    K = field_of(alpha)
    Gk = K.specialize(G, X)
    if not Gk:
        raise ValueError("polynomial vanishes identically on the fiber")
    if K.pdeg(Gk) < 1:
        return []
    norm = resultant(alpha.minpoly_in(X).set_domain(QQ), G, X)
    norm = Poly(norm.as_expr(), Y, domain=QQ)
    out = []
    for r in irreducible_factors(norm):
        rk = K.from_rational_poly(r)
        D = K.pgcd(Gk, rk)
        if K.pdeg(D) < 1:
            continue
        roots = isolate_irreducible(r)
        if K.pdeg(D) == K.pdeg(rk):
            out.extend(roots)
            continue
        E = K.pdivmod(rk, D)[0]
        out.extend(b for b in roots if _separate(K, D, E, alpha, b))
    return out


def evaluate_box(p: Poly, pt: CurvePoint, precision: int | None = None) -> CBox:
    """Enclosure of p at a finite curve point, of width at most 2**-precision."""
    if not pt.is_finite:
        raise ValueError("evaluate_box needs finite coordinates; use a bihomogeneous chart")
    precision = default_precision() if precision is None else precision
    target = Fraction(1, 2**precision)
    p = bipoly(p)
    # p as a polynomial in y with coefficients in x
    dy = max(degree_in(p, Y), 0)
    cols = [coeff_poly(p, Y, k) for k in range(dy + 1)]
    a, b = pt.first, pt.second
    while True:
        vals = [eval_uni_box(c, a.box) for c in cols]
        enc = horner_box(list(reversed(vals)), b.box)
        if enc.width <= target:
            return enc
        a.refine()
        b.refine()


def point_on_curve(p: Poly, pt: CurvePoint) -> bool:
    """Exact membership test on the bihomogeneous curve."""
    p = bipoly(p)
    dx, dy = degree_in(p, X), degree_in(p, Y)
    a, b = pt.first, pt.second
    if a is INF and b is INF:
        return p.coeff_monomial(X**dx * Y**dy) == 0
    if a is INF:
        return b.is_root_of(coeff_poly(p, X, dx))
    if b is INF:
        return a.is_root_of(coeff_poly(p, Y, dy))
    return vanishes_at_pair(p, a, b)


def distinct(nums) -> list:
    out = []
    for n in nums:
        if not any(n == m for m in out):
            out.append(n)
    return out


__all__ = [
    "AlgebraicNumber", "CBox", "CurvePoint", "INF", "Infinity", "ProjPoint", "as_proj",
    "default_precision", "distinct", "equals", "evaluate_box", "eval_uni_box", "field_of",
    "from_box", "isolate_irreducible", "isolate_roots", "point_on_curve", "roots_over",
    "vanishes_at_pair",
]
