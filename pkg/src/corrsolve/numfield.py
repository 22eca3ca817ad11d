"""Arithmetic in a simple algebraic extension Q(theta) = Q[theta]/(m).

Elements are sympy Polys in ``THETA`` reduced modulo the (irreducible)
modulus.  Polynomials over the field are plain lists of elements, lowest
degree first, with no trailing zeros.  This is what the package uses to take
gcds of fibers p(alpha, Y) over Q(alpha) without leaving exact arithmetic.
"""

from __future__ import annotations

from sympy import QQ, Poly, Symbol

from .poly import X, Y, bipoly, coeff_poly, degree_in

THETA = Symbol("theta")

KPoly = list  # list[Poly in THETA], low degree first


class NumberField:
    def __init__(self, modulus: Poly):
        if len(modulus.gens) != 1 or modulus.degree() < 1:
            raise ValueError("modulus must be a nonconstant univariate polynomial")
        self.modulus = Poly(modulus.as_expr().subs(modulus.gen, THETA), THETA, domain=QQ).monic()
        self.degree = self.modulus.degree()

    def __repr__(self) -> str:
        return f"NumberField({self.modulus.as_expr()})"

    # -- elements ---------------------------------------------------------
    def elem(self, f) -> Poly:
        if not isinstance(f, Poly):
            return Poly(f, THETA, domain=QQ)
        if f.gens != (THETA,):
            f = Poly(f.as_expr().subs(f.gen, THETA), THETA, domain=QQ) if len(f.gens) == 1 \
                else Poly(f.as_expr(), THETA, domain=QQ)
        return f.rem(self.modulus)

    def zero(self) -> Poly:
        return Poly(0, THETA, domain=QQ)

    def one(self) -> Poly:
        return Poly(1, THETA, domain=QQ)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b).rem(self.modulus)

    def inv(self, a: Poly) -> Poly:
        if a.is_zero:
            raise ZeroDivisionError("inverse of zero in number field")
        return a.invert(self.modulus)

    # -- polynomials over the field ----------------------------------------
    @staticmethod
    def trim(f: KPoly) -> KPoly:
        f = list(f)
        while f and f[-1].is_zero:
            f.pop()
        return f

    def padd(self, f: KPoly, g: KPoly) -> KPoly:
        n = max(len(f), len(g))
        z = self.zero()
        return self.trim([(f[i] if i < len(f) else z) + (g[i] if i < len(g) else z) for i in range(n)])

    def pscale(self, f: KPoly, c: Poly) -> KPoly:
        return self.trim([self.mul(a, c) for a in f])

    def psub(self, f: KPoly, g: KPoly) -> KPoly:
        return self.padd(f, [-a for a in g])

    def pmul(self, f: KPoly, g: KPoly) -> KPoly:
        if not f or not g:
            return []
        out = [self.zero() for _ in range(len(f) + len(g) - 1)]
        for i, a in enumerate(f):
            if a.is_zero:
                continue
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
        return self.trim([c.rem(self.modulus) for c in out])

    def pdivmod(self, f: KPoly, g: KPoly) -> tuple[KPoly, KPoly]:
        g = self.trim(g)
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        r = self.trim(f)
        q = [self.zero() for _ in range(max(len(r) - len(g) + 1, 0))]
        lead_inv = self.inv(g[-1])
        while len(r) >= len(g):
            shift = len(r) - len(g)
            c = self.mul(r[-1], lead_inv)
            q[shift] = c
            r = list(r)
            for i, gi in enumerate(g):
                r[i + shift] = (r[i + shift] - c * gi).rem(self.modulus)
            r = self.trim(r)
        return self.trim(q), r

    def pmonic(self, f: KPoly) -> KPoly:
        f = self.trim(f)
        if not f:
            return f
        return self.pscale(f, self.inv(f[-1]))

    def pgcd(self, f: KPoly, g: KPoly) -> KPoly:
        a, b = self.trim(f), self.trim(g)
        while b:
            a, b = b, self.pdivmod(a, b)[1]
        return self.pmonic(a)

    def pderiv(self, f: KPoly) -> KPoly:
        return self.trim([f[i] * i for i in range(1, len(f))])

    @staticmethod
    def pdeg(f: KPoly) -> int:
        return len(f) - 1

    def sqf_decomposition(self, f: KPoly) -> list[tuple[KPoly, int]]:
        """Yun's algorithm: [(g_k, k)] with f = lc * prod g_k**k, g_k squarefree and coprime."""
        f = self.pmonic(f)
        if self.pdeg(f) < 1:
            return []
        out = []
        df = self.pderiv(f)
        a = self.pgcd(f, df)
        b = self.pdivmod(f, a)[0]
        c = self.pdivmod(df, a)[0]
        d = self.psub(c, self.pderiv(b))
        k = 1
        while self.pdeg(b) >= 1:
            a = self.pgcd(b, d)
            if self.pdeg(a) >= 1:
                out.append((a, k))
            b = self.pdivmod(b, a)[0]
            c = self.pdivmod(d, a)[0]
            d = self.psub(c, self.pderiv(b))
            k += 1
        return out

    # -- conversions ----------------------------------------------------------
    def specialize(self, F, var=X) -> KPoly:
        """View a BiPoly as a polynomial in the other variable with ``var`` -> theta."""
        F = bipoly(F)
        other = Y if var == X else X
        out = []
        for k in range(max(degree_in(F, other), -1) + 1):
            out.append(self.elem(coeff_poly(F, other, k)))
        return self.trim(out)

    def lift(self, f: KPoly, var=X) -> Poly:
        """Inverse of ``specialize``: theta -> ``var``, polynomial variable -> the other one."""
        other = Y if var == X else X
        rep = {}
        for k, c in enumerate(f):
            for (i,), v in c.terms():
                key = (i, k) if var == X else (k, i)
                rep[key] = v
        if not rep:
            return Poly(0, X, Y, domain=QQ)
        return Poly.from_dict(rep, X, Y, domain=QQ)

    def from_rational_poly(self, f: Poly) -> KPoly:
        """Embed a UniPoly with rational coefficients."""
        coeffs = list(reversed(f.all_coeffs())) if not f.is_zero else []
        return self.trim([Poly(c, THETA, domain=QQ) for c in coeffs])


def rational_field() -> NumberField:
    return NumberField(Poly(THETA, THETA, domain=QQ))
