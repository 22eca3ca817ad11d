"""Functions attached to finite orbits, their divisors at infinity, and certificates.

A closed orbit bundle with projections A, B gives the rational function
Theta = prod(x - lambda) / prod(y - mu) on the curve.  When the bundle
avoids Omega and infinity, Theta has no finite zeros or poles, so its
divisor lives on the places at infinity.  An integer relation among such
divisors gives a product of Thetas without poles, hence a constant c, and
that is an identity f0(x) = c * g0(y) checked exactly modulo p.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from sympy import QQ, Poly
from sympy.polys.matrices import DomainMatrix

from .algebraic import INF, CurvePoint, field_of, vanishes_at_pair
from .correspondence import Correspondence, HypothesisWarning, points_at_infinity
from .finiteness import _reduce_mod_p
from .numfield import NumberField, rational_field
from .omega import OmegaLocus, avoids_omega, omega
from .orbits import OrbitBundle, OrbitStatus, materialize_points
from .parser import parse, parse_univariate, print_canonical, print_uni
from .poly import X, Y, Chart, bipoly, chart_poly, coeff_poly, degree_in, is_constant, monic, to_fraction


class ThetaError(ValueError):
    """The orbit bundle cannot produce a Theta without finite zeros or poles."""


class CertificateError(AssertionError):
    """A kernel relation failed exact verification (indicates a valuation bug)."""


# ---------------------------------------------------------------------------
# Theta


@dataclass(frozen=True)
class Theta:
    num: Poly  # monic squarefree in x
    den: Poly  # monic squarefree in y
    source: OrbitBundle | None = field(default=None, compare=False)
    seed: str | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return f"({print_uni(self.num)})/({print_uni(self.den)})"

    def bundle(self) -> OrbitBundle:
        if self.source is not None:
            return self.source
        return OrbitBundle(self.num, self.den, False, False, OrbitStatus.CLOSED)


def theta_of_orbit(C: Correspondence, bundle: OrbitBundle, om: OmegaLocus | None = None,
                   seed: str | None = None) -> Theta:
    if not bundle.closed:
        raise ThetaError("the orbit bundle is not closed")
    if bundle.meets_infinity:
        raise ThetaError("the orbit meets infinity")
    om = om if om is not None else omega(C)
    if not avoids_omega(om, bundle):
        raise ThetaError("the orbit meets Omega")
    return Theta(monic(bundle.a_poly), monic(bundle.b_poly), bundle, seed)


@dataclass
class PartialsReport:
    passed: bool
    checked: int
    counterexample: CurvePoint | None = None
    vanishing: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked,
                "counterexample": None if self.counterexample is None else repr(self.counterexample),
                "vanishing": list(self.vanishing)}


def check_partials_nonvanishing(C: Correspondence, t: Theta) -> PartialsReport:
    """Check that p_X and p_Y are nonzero at every point of (A x B) n C."""
    bundle = materialize_points(C, t.bundle())
    pts = [pt for pt in bundle.points if pt.is_finite]
    for pt in pts:
        bad = tuple(name for name, d in (("p_x", C.px), ("p_y", C.py))
                    if vanishes_at_pair(d, pt.first, pt.second))
        if bad:
            return PartialsReport(False, len(pts), pt, bad)
    return PartialsReport(True, len(pts))


# ---------------------------------------------------------------------------
# places at infinity


@dataclass(frozen=True)
class PlaceAtInfinity:
    """A branch of the curve at a point at infinity.

    ``ord_x``/``ord_y`` are the orders of the coordinate functions along the
    branch; ``finite_orders`` maps "x"/"y" to the order of (coordinate - its
    finite center value).  ``merged`` places stand for several branches that
    share leading behaviour and could not be separated; their orders are sums.
    """

    center: CurvePoint
    e: int
    ord_x: int
    ord_y: int
    finite_orders: tuple[tuple[str, int], ...] = ()
    singular: bool = False
    merged: bool = False

    def finite_order(self, coord: str) -> int | None:
        return dict(self.finite_orders).get(coord)

    def as_dict(self) -> dict:
        return {"center": repr(self.center), "e": self.e, "ord_x": self.ord_x, "ord_y": self.ord_y,
                "finite_orders": dict(self.finite_orders), "singular": self.singular, "merged": self.merged}


def _taylor_shift(K: NumberField, f: Poly) -> list:
    """Coefficients of f(w + theta) as a KPoly in w."""
    out: list = []
    shift = [_theta(K), K.one()]
    for c in f.all_coeffs():
        out = K.padd(K.pmul(out, shift), [K.elem(Poly(c, X, domain=QQ))])
    return out


def _theta(K: NumberField) -> Poly:
    return K.elem(Poly(X, X, domain=QQ))


def _local_coeffs(Q: Poly, K: NumberField) -> dict[tuple[int, int], Poly]:
    """{(j, i): a} for the chart polynomial Q(s, y) written around y = theta as sum a * s^i w^j."""
    out = {}
    for i in range(degree_in(Q, X) + 1):
        Qi = coeff_poly(Q, X, i)
        if Qi.is_zero:
            continue
        for j, a in enumerate(_taylor_shift(K, Poly(Qi.as_expr(), Y, domain=QQ))):
            if not a.is_zero:
                out[(j, i)] = a
    return out


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(points)
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


@dataclass(frozen=True)
class _Branch:
    ord_s: int
    ord_w: int
    e: int
    merged: bool


def _branches(coeffs: dict, K: NumberField) -> tuple[list[_Branch], bool]:
    """Newton-polygon branches of q(s, w) = 0 through the origin, with orders of s and w."""
    if (0, 0) in coeffs:
        raise ValueError("center is not on the curve")
    i0 = min(i for (j, i) in coeffs if j == 0)
    jm = min(j for (j, i) in coeffs if i == 0)
    singular = (1, 0) not in coeffs and (0, 1) not in coeffs
    window = {}
    for (j, i) in coeffs:
        if j <= jm and i <= i0:
            window[j] = min(window.get(j, i), i)
    hull = _lower_hull(list(window.items()))
    out: list[_Branch] = []
    for (ja, ia), (jb, ib) in zip(hull, hull[1:]):
        dj, di = jb - ja, ia - ib
        g = gcd(dj, di)
        e, m = dj // g, di // g
        psi = K.trim([coeffs.get((ja + k * e, ia - k * m), K.zero()) for k in range(g + 1)])
        # one place per distinct root of psi; a repeated root stands for merged branches
        for f, mult in K.sqf_decomposition(psi):
            out.extend(_Branch(mult * e, mult * m, mult * e, mult > 1) for _ in range(K.pdeg(f)))
    width = sum(b.ord_s for b in out)
    if width != jm:
        raise AssertionError(f"branch orders sum to {width}, local intersection is {jm}")
    return out, singular


def _places_x_infinite(C: Correspondence, beta, swap: bool) -> list[PlaceAtInfinity]:
    """Places centered at (inf, beta) (or at (beta, inf) for the transposed curve when swap)."""
    Q = chart_poly(C.p, Chart.X_INFINITE)
    K = field_of(beta)
    branches, singular = _branches(_local_coeffs(Q, K), K)
    beta_zero = beta.is_rational and beta.value == 0
    places = []
    for b in branches:
        ox, oy = -b.ord_s, (b.ord_w if beta_zero else 0)
        fin = (("y", b.ord_w),)
        center = CurvePoint(INF, beta)
        if swap:
            ox, oy = oy, ox
            fin = (("x", b.ord_w),)
            center = CurvePoint(beta, INF)
        places.append(PlaceAtInfinity(center, b.e, ox, oy, fin, singular, b.merged))
    return places


def _places_both_infinite(C: Correspondence) -> list[PlaceAtInfinity]:
    Q = chart_poly(C.p, Chart.BOTH_INFINITE)
    K = rational_field()
    coeffs = {(j, i): K.elem(Poly(v, X, domain=QQ)) for (i, j), v in Q.terms()}
    branches, singular = _branches(coeffs, K)
    return [PlaceAtInfinity(CurvePoint(INF, INF), b.e, -b.ord_s, -b.ord_w, (), singular, b.merged)
            for b in branches]


def places_at_infinity(C: Correspondence) -> list[PlaceAtInfinity]:
    """All places of the curve over x = inf or y = inf, by Newton polygons of the chart equations."""
    places: list[PlaceAtInfinity] = []
    for pt in points_at_infinity(C):
        if pt.first is INF and pt.second is INF:
            places.extend(_places_both_infinite(C))
        elif pt.first is INF:
            places.extend(_places_x_infinite(C, pt.second, swap=False))
        else:
            places.extend(_places_x_infinite(C.transpose, pt.first, swap=True))
    bad = [pl for pl in places if pl.singular or pl.merged]
    if bad:
        warnings.warn(f"{C!r}: singular points at infinity "
                      f"{sorted({repr(pl.center) for pl in bad})}; branches merged where inseparable",
                      HypothesisWarning, stacklevel=2)
    return places


def _coord_order(place: PlaceAtInfinity, coord: str, poly: Poly) -> int:
    """Order of prod (coord - root) over the roots of the squarefree ``poly`` along the place."""
    if is_constant(poly):
        return 0
    center = place.center.first if coord == "x" else place.center.second
    if center is INF:
        return poly.degree() * (place.ord_x if coord == "x" else place.ord_y)
    if center.is_root_of(poly):
        return place.finite_order(coord) or 0
    return 0


def valuation(place: PlaceAtInfinity, t: Theta) -> int:
    return _coord_order(place, "x", t.num) - _coord_order(place, "y", t.den)


@dataclass
class DivisorMatrix:
    places: list[PlaceAtInfinity]
    thetas: list[Theta]
    rows: list[list[int]]

    @classmethod
    def build(cls, places: list[PlaceAtInfinity], thetas: list[Theta]) -> "DivisorMatrix":
        return cls(places, thetas, [[valuation(pl, t) for pl in places] for t in thetas])

    def row_sums(self) -> list[int]:
        return [sum(r) for r in self.rows]

    def kernel(self) -> list[list[int]]:
        """Primitive integer basis of {n : sum_i n_i * row_i = 0}."""
        k = len(self.thetas)
        if k == 0:
            return []
        if not self.places:
            return [[int(i == j) for j in range(k)] for i in range(k)]
        Mt = DomainMatrix([[QQ(self.rows[i][j]) for i in range(k)] for j in range(len(self.places))],
                          (len(self.places), k), QQ)
        return [_primitive([Fraction(int(c.p), int(c.q)) for c in vec])
                for vec in Mt.nullspace().to_Matrix().tolist()]


def _primitive(v: list[Fraction]) -> list[int]:
    den = lcm(*(c.denominator for c in v))
    ints = [int(c * den) for c in v]
    g = gcd(*ints)
    ints = [c // g for c in ints]
    first = next(c for c in ints if c)
    return [-c for c in ints] if first < 0 else ints


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class RationalFunction:
    num: Poly
    den: Poly

    def as_dict(self) -> dict:
        return {"num": print_uni(self.num), "den": print_uni(self.den)}

    def __str__(self) -> str:
        return f"({print_uni(self.num)})/({print_uni(self.den)})"


@dataclass(frozen=True)
class Certificate:
    """f0(x) = c * g0(y) on the curve, i.e. f0.num*g0.den - c*f0.den*g0.num == cofactor * p."""

    p: Poly
    f0: RationalFunction
    g0: RationalFunction
    c: Fraction
    cofactor: Poly
    exponents: tuple[int, ...]
    seeds: tuple[str, ...]

    def identity_poly(self) -> Poly:
        lhs = bipoly(self.f0.num.as_expr() * self.g0.den.as_expr())
        rhs = bipoly(self.f0.den.as_expr() * self.g0.num.as_expr())
        return lhs - rhs * QQ(self.c.numerator, self.c.denominator)

    def verify(self) -> bool:
        return (self.identity_poly() - self.cofactor * bipoly(self.p)).is_zero

    def as_dict(self) -> dict:
        return {
            "p": print_canonical(self.p),
            "f0": self.f0.as_dict(),
            "g0": self.g0.as_dict(),
            "c": str(self.c),
            "cofactor": print_canonical(self.cofactor),
            "exponents": list(self.exponents),
            "seeds": list(self.seeds),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(
            parse(d["p"]),
            RationalFunction(parse_univariate(d["f0"]["num"], X), parse_univariate(d["f0"]["den"], X)),
            RationalFunction(parse_univariate(d["g0"]["num"], Y), parse_univariate(d["g0"]["den"], Y)),
            Fraction(d["c"]),
            parse(d["cofactor"]),
            tuple(int(n) for n in d["exponents"]),
            tuple(d["seeds"]),
        )


def verify_certificate(d: dict) -> bool:
    """Re-verify a serialized certificate from its own fields."""
    cert = Certificate.from_dict(d)
    if is_constant(cert.f0.num) and is_constant(cert.f0.den):
        return False
    return cert.verify()


def _power_product(pairs, var) -> Poly:
    out = Poly(1, var, domain=QQ)
    for f, n in pairs:
        if n:
            out = out * Poly(f.as_expr(), var, domain=QQ) ** n
    return out


def _relation_from_kernel(C: Correspondence, thetas: list[Theta], n: list[int]) -> Certificate | None:
    pos = [(t, k) for t, k in zip(thetas, n) if k > 0]
    neg = [(t, -k) for t, k in zip(thetas, n) if k < 0]
    Np = _power_product([(t.num, k) for t, k in pos], X)
    Nm = _power_product([(t.num, k) for t, k in neg], X)
    Dp = _power_product([(t.den, k) for t, k in pos], Y)
    Dm = _power_product([(t.den, k) for t, k in neg], Y)
    F = bipoly(Np.as_expr() * Dm.as_expr())
    G = bipoly(Nm.as_expr() * Dp.as_expr())
    dy = C.dy
    K = max(degree_in(F, Y), degree_in(G, Y), dy - 1) - dy + 1
    rF, rG = _reduce_mod_p(F, C.p, K), _reduce_mod_p(G, C.p, K)
    if rG.is_zero:
        return None
    mono, lead = rG.terms()[0]
    c = rF.coeff_monomial(mono) / lead
    if not (rF - rG * c).is_zero:
        return None
    cofactor, rem = (F - G * c).div(C.p)
    if not rem.is_zero:
        raise CertificateError("relation vanishes modulo p but exact division failed")
    seeds = tuple(t.seed or str(t) for t, k in zip(thetas, n) if k)
    cert = Certificate(C.p, RationalFunction(Np, Nm), RationalFunction(Dp, Dm), to_fraction(c), cofactor,
                       tuple(n), seeds)
    if is_constant(Np) and is_constant(Nm):
        return None
    if not cert.verify():
        raise CertificateError("certificate failed exact verification")
    return cert


@dataclass
class CertifyOutcome:
    certificate: Certificate | None
    matrix: DivisorMatrix
    kernel: list[list[int]]

    @property
    def insufficient(self) -> bool:
        return self.certificate is None


def certify_finite(C: Correspondence, thetas: list[Theta],
                   places: list[PlaceAtInfinity] | None = None) -> CertifyOutcome:
    """Divisor kernel -> pole-free product of Thetas -> exactly verified constant relation."""
    places = places if places is not None else places_at_infinity(C)
    M = DivisorMatrix.build(places, thetas)
    bad = [i for i, s in enumerate(M.row_sums()) if s != 0]
    if bad:
        raise CertificateError(f"divisor rows {bad} do not have degree zero")
    kernel = M.kernel()
    # prefer the relation with the fewest Thetas
    for n in sorted(kernel, key=lambda v: (sum(1 for c in v if c), sum(abs(c) for c in v))):
        cert = _relation_from_kernel(C, thetas, n)
        if cert is not None:
            return CertifyOutcome(cert, M, kernel)
    if kernel:
        raise CertificateError(f"no kernel vector of {kernel} gives a constant on the curve")
    return CertifyOutcome(None, M, kernel)


def finite_orbit_count_bound(C: Correspondence, om: OmegaLocus | None = None,
                             places: list[PlaceAtInfinity] | None = None) -> int:
    """#points at infinity + |Omega| + #places at infinity.

    A finite orbit meets infinity, meets Omega, or gives a divisor row; at
    most #places rows can be independent before a certificate exists.
    """
    om = om if om is not None else omega(C)
    places = places if places is not None else places_at_infinity(C)
    return len(points_at_infinity(C)) + len(om.points) + len(places)


__all__ = [
    "Certificate", "CertificateError", "CertifyOutcome", "DivisorMatrix", "PartialsReport", "PlaceAtInfinity",
    "RationalFunction", "Theta", "ThetaError", "certify_finite", "check_partials_nonvanishing", "finite_orbit_count_bound",
    "places_at_infinity", "theta_of_orbit", "valuation", "verify_certificate",
]
