"""The locus where a projection of the curve ramifies or the curve is singular.

Omega collects the affine curve points whose first coordinate is a root of
x_poly or whose second coordinate is a root of y_poly, where these are the
squarefree parts of resultants of p with p_X and p_Y.  Resultants are
multiples of the elimination generators, so this is a superset of the
smallest such locus; avoiding it is a stronger condition.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import QQ, Poly

from .algebraic import CurvePoint, isolate_irreducible, roots_over
from .correspondence import Correspondence
from .finiteness import SharedFactorError
from .parser import print_uni
from .poly import X, Y, irreducible_factors, is_constant, resultant, squarefree_part


@dataclass(frozen=True)
class OmegaLocus:
    x_poly: Poly
    y_poly: Poly
    points: tuple[CurvePoint, ...]

    def size_bound(self, C: Correspondence) -> int:
        return omega_size_bound(C, self)

    def as_dict(self) -> dict:
        return {
            "x_poly": print_uni(self.x_poly),
            "y_poly": print_uni(self.y_poly),
            "size": len(self.points),
            "points": [repr(pt) for pt in self.points],
        }


def _projection(p: Poly, partials, var, keep) -> Poly:
    prod = Poly(1, keep, domain=QQ)
    for d in partials:
        if d.is_zero:
            # the partial vanishes identically: every point of the curve is in Omega
            raise SharedFactorError("shared factor between p and a partial derivative")
        r = Poly(resultant(p, d, var).as_expr(), keep, domain=QQ)
        if r.is_zero:
            raise SharedFactorError("shared factor between p and a partial derivative")
        prod = prod * r
    return Poly(1, keep, domain=QQ) if is_constant(prod) else squarefree_part(prod)


def omega(C: Correspondence) -> OmegaLocus:
    """Resultant superset of Omega: curve points over roots of x_poly or under roots of y_poly."""
    p, px, py = C.p, C.px, C.py
    xq = _projection(p, (px, py), Y, X)
    yq = _projection(p, (px, py), X, Y)
    pts: list[CurvePoint] = []
    if not is_constant(xq):
        for q in irreducible_factors(xq):
            for alpha in isolate_irreducible(q):
                pts.extend(CurvePoint(alpha, b) for b in roots_over(alpha, p))
    if not is_constant(yq):
        pT = C.transpose.p
        for r in irreducible_factors(yq):
            for beta in isolate_irreducible(r):
                for a in roots_over(beta, pT):
                    pt = CurvePoint(a, beta)
                    if pt not in pts:
                        pts.append(pt)
    return OmegaLocus(xq, yq, tuple(pts))


def omega_size_bound(C: Correspondence, om: OmegaLocus) -> int:
    """deg(x_poly) * deg_y p + deg(y_poly) * deg_x p; an upper bound for |Omega|."""
    return om.x_poly.degree() * C.dy + om.y_poly.degree() * C.dx


def avoids_omega(om: OmegaLocus, bundle) -> bool:
    """True when no finite coordinate of the bundle is a root of x_poly or y_poly.

    Infinite coordinates are reported separately by the bundle itself.
    """
    return is_constant(_gcd(bundle.a_poly, om.x_poly)) and is_constant(_gcd(bundle.b_poly, om.y_poly))


def _gcd(f: Poly, g: Poly) -> Poly:
    if is_constant(f) or is_constant(g):
        return Poly(1, f.gen, domain=QQ)
    return f.gcd(g)


__all__ = ["OmegaLocus", "avoids_omega", "omega", "omega_size_bound"]
