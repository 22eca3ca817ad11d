"""Finiteness of a correspondence.

Three routes, with different strength:

* ``period`` iterates the relation R = tr(C) o C by resultant composition
  and reports the first n with R^(n) == R^(n+1) (a semi-decision with caps);
* ``separated_search`` looks for f(x) = g(y) on the curve with monomial
  denominators by linear algebra over the rationals;
* ``cyclotomic_ratio_test`` proves infiniteness of a homogeneous
  correspondence when two roots of p(X, 1) have a ratio that is not a root
  of unity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import sympy
from sympy import QQ, Poly
from sympy.polys.matrices import DomainMatrix

from .correspondence import Correspondence
from .parser import print_canonical, print_uni
from .poly import (T, X, Y, Z, bipoly, canonical, coeff_poly, content_in, degree_in, exquo,
                   factor_univariate, is_constant, is_homogeneous, resultant, squarefree_part,
                   to_fraction)


class SharedFactorError(ValueError):
    """Composition of two relations whose polynomials share a factor in the middle variable."""


class InconsistencyError(RuntimeError):
    """Finite and infinite evidence for the same correspondence."""


# ---------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class Relation:
    """A relation between two copies of the affine line, as a point set.

    ``mixed`` holds the factors involving both variables; factors in a
    single variable (vertical or horizontal lines) are kept in ``lines``.
    """

    mixed: Poly
    lines: tuple[Poly, ...] = ()

    @classmethod
    def from_poly(cls, F: Poly) -> "Relation":
        F = bipoly(F)
        if F.is_zero:
            raise ValueError("the zero polynomial does not define a relation")
        sqf = squarefree_part(F)
        cx = content_in(sqf, Y)
        cy = content_in(sqf, X)
        mixed = exquo(sqf, bipoly(cx.as_expr() * cy.as_expr()))
        lines = []
        for c in (cx, cy):
            if not is_constant(c):
                lines.extend(q for q, _ in factor_univariate(c)[1])
        lines.sort(key=lambda q: (str(q.gen), [to_fraction(a) for a in q.all_coeffs()]))
        return cls(canonical(mixed), tuple(lines))

    def full(self) -> Poly:
        F = self.mixed
        for q in self.lines:
            F = F * bipoly(q)
        return F

    @property
    def bidegree(self) -> tuple[int, int]:
        F = self.full()
        return degree_in(F, X), degree_in(F, Y)

    def transpose(self) -> "Relation":
        return Relation.from_poly(self.full().as_expr().subs({X: Y, Y: X}, simultaneous=True))

    def __str__(self) -> str:
        s = print_canonical(self.mixed)
        if self.lines:
            s += " | lines: " + ", ".join(print_uni(q) for q in self.lines)
        return s


def compose(r: Relation, s: Relation) -> Relation:
    """s o r: pairs (a, c) with (a, b) in r and (b, c) in s for some b."""
    R = Poly(r.full().as_expr().subs(Y, Z), X, Z, domain=QQ)
    S = Poly(s.full().as_expr().subs(X, Z), Z, Y, domain=QQ)
    if degree_in(R, Z) < 1 or degree_in(S, Z) < 1:
        raise ValueError("relations must involve the shared variable")
    res = resultant(R, S, Z)
    if res.is_zero:
        raise SharedFactorError("relations share a factor in the middle variable")
    return Relation.from_poly(bipoly(res))


def correspondence_relation(C: Correspondence) -> Relation:
    """R = tr(C) o C, relating first coordinates that share a second coordinate."""
    c = Relation.from_poly(C.p)
    return compose(c, c.transpose())


class PeriodOutcome(enum.Enum):
    FINITE = "finite"
    NO_STABILIZATION = "no-stabilization"
    DEGREE_CAP = "degree-cap-exceeded"


@dataclass
class PeriodReport:
    outcome: PeriodOutcome
    period: int | None = None
    cap: int | None = None
    trace: list[tuple[int, int]] = field(default_factory=list)
    relation: Relation | None = None

    def as_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "period": self.period,
            "cap": self.cap,
            "trace": [list(t) for t in self.trace],
            "relation": str(self.relation) if self.relation is not None else None,
        }


def period(C: Correspondence, max_n: int = 8, max_degree: int = 4096) -> PeriodReport:
    R = correspondence_relation(C)
    cur = R
    trace = [R.bidegree]
    for n in range(1, max_n + 1):
        nxt = compose(cur, R)
        trace.append(nxt.bidegree)
        if nxt == cur:
            return PeriodReport(PeriodOutcome.FINITE, period=n, trace=trace, relation=cur)
        if sum(nxt.bidegree) > max_degree:
            return PeriodReport(PeriodOutcome.DEGREE_CAP, cap=max_degree, trace=trace)
        cur = nxt
    return PeriodReport(PeriodOutcome.NO_STABILIZATION, cap=max_n, trace=trace)


def iterate_relation(C: Correspondence, n: int) -> Relation:
    """R^(n), the n-fold composite of tr(C) o C."""
    R = correspondence_relation(C)
    cur = R
    for _ in range(n - 1):
        cur = compose(cur, R)
    return cur


# ---------------------------------------------------------------------------
# separated multiples


@dataclass(frozen=True)
class SeparatedWitness:
    """fnum(X)/X^a = gnum(Y)/Y^b on the curve: fnum*Y^b - gnum*X^a == cofactor*p."""

    fnum: Poly
    a: int
    gnum: Poly
    b: int
    cofactor: Poly

    def relation_poly(self) -> Poly:
        return bipoly(self.fnum.as_expr() * Y**self.b - self.gnum.as_expr() * X**self.a)

    def verify(self, p: Poly) -> bool:
        return (self.relation_poly() - self.cofactor * bipoly(p)).is_zero

    def describe(self) -> str:
        f = print_uni(self.fnum)
        g = print_uni(self.gnum)
        fs = f"({f})/x^{self.a}" if self.a > 1 else (f"({f})/x" if self.a == 1 else f)
        gs = f"({g})/y^{self.b}" if self.b > 1 else (f"({g})/y" if self.b == 1 else g)
        return f"{fs} = {gs}"

    def as_dict(self) -> dict:
        return {"fnum": print_uni(self.fnum), "fden": f"x^{self.a}", "gnum": print_uni(self.gnum),
                "gden": f"y^{self.b}", "cofactor": print_canonical(self.cofactor)}


def _reduce_mod_p(e: Poly, p: Poly, K: int) -> Poly:
    """lc_Y(p)^K * e reduced modulo p as polynomials in Y over Q(X)."""
    E = Poly(e.as_expr(), Y, X, domain=QQ)
    P = Poly(p.as_expr(), Y, X, domain=QQ)
    dy = P.degree(Y)
    lead = Poly(coeff_poly(p, Y, dy).as_expr(), Y, X, domain=QQ)
    de = E.degree(Y) if not E.is_zero else -1
    delta = max(de - dy + 1, 0)
    R = E.prem(P) if delta > 0 else E
    return bipoly(R * lead ** (K - delta))


def _solve_separated(p: Poly, deg_bound: int, a: int, b: int) -> SeparatedWitness | None:
    dy = degree_in(p, Y)
    basis = [Poly(X**i * Y**b, X, Y, domain=QQ) for i in range(deg_bound + 1)]
    basis += [Poly(-(Y**j) * X**a, X, Y, domain=QQ) for j in range(deg_bound + 1)]
    top = max(b, deg_bound)
    K = max(top - dy + 1, 0)
    reduced = [_reduce_mod_p(e, p, K) for e in basis]
    monos = sorted({m for r in reduced for m, _ in r.terms()})
    n = len(basis)
    if monos:
        index = {m: k for k, m in enumerate(monos)}
        rows = [[QQ(0)] * n for _ in monos]
        for col, r in enumerate(reduced):
            for m, v in r.terms():
                rows[index[m]][col] = v
        null = DomainMatrix(rows, (len(rows), n), QQ).nullspace().to_Matrix().tolist()
    else:
        null = [[sympy.Integer(1 if k == col else 0) for k in range(n)] for col in range(n)]
    best = None
    for vec in null:
        v = [Fraction(int(c.p), int(c.q)) for c in vec]
        if a <= deg_bound and b <= deg_bound:
            t = v[a]
            v[a] -= t
            v[deg_bound + 1 + b] -= t
        fco, gco = v[:deg_bound + 1], v[deg_bound + 1:]
        if not any(fco):
            continue
        lowest = next(c for c in fco if c != 0)
        fco = [c / lowest for c in fco]
        gco = [c / lowest for c in gco]
        deg = max(i for i, c in enumerate(fco) if c != 0)
        if best is None or deg < best[0]:
            best = (deg, fco, gco)
    if best is None:
        return None
    _, fco, gco = best
    fnum = Poly.from_dict({(i,): QQ(c.numerator, c.denominator) for i, c in enumerate(fco) if c},
                          X, domain=QQ)
    gnum = Poly.from_dict({(j,): QQ(c.numerator, c.denominator) for j, c in enumerate(gco) if c},
                          Y, domain=QQ) if any(gco) else Poly(0, Y, domain=QQ)
    F = bipoly(fnum.as_expr() * Y**b - gnum.as_expr() * X**a)
    q, r = F.div(p)
    if not r.is_zero:
        raise AssertionError("separated-multiple solution failed exact verification")
    return SeparatedWitness(fnum, a, gnum, b, q)


def separated_search(C: Correspondence, deg_bound: int = 8, den_bound: int = 2) -> SeparatedWitness | None:
    """Search for a separated multiple fnum(X)*Y^b - gnum(Y)*X^a of p; None when not found."""
    pairs = sorted(((a, b) for a in range(den_bound + 1) for b in range(den_bound + 1)),
                   key=lambda ab: (ab[0] + ab[1], ab[0]))
    for a, b in pairs:
        w = _solve_separated(C.p, deg_bound, a, b)
        if w is not None:
            return w
    return None


# ---------------------------------------------------------------------------
# root-of-unity ratio test


@dataclass
class CyclotomicResult:
    infinite: bool
    witness: Poly | None
    quotient_factors: list[Poly]

    @property
    def outcome(self) -> str:
        return "infinite" if self.infinite else "inconclusive"

    def as_dict(self) -> dict:
        return {"outcome": self.outcome,
                "witness": print_uni(self.witness) if self.witness is not None else None,
                "quotient_factors": [print_uni(q) for q in self.quotient_factors]}


def ratio_polynomial(q: Poly) -> Poly:
    """Polynomial in t whose roots are all ratios r_i / r_j of roots of q."""
    qs = Poly(q.as_expr().subs(q.gen, Z), Z, domain=QQ)
    qts = Poly(q.as_expr().subs(q.gen, T * Z), Z, T, domain=QQ)
    return Poly(resultant(qs, qts, Z).as_expr(), T, domain=QQ)


def _is_cyclotomic(f: Poly) -> bool:
    m = f.monic()
    if any(to_fraction(c).denominator != 1 for c in m.all_coeffs()):
        return False
    return Poly(m.as_expr(), T, domain="ZZ").is_cyclotomic


def cyclotomic_ratio_test(C: Correspondence) -> CyclotomicResult:
    if not is_homogeneous(C.p):
        raise ValueError("the ratio test applies to homogeneous p only")
    q = Poly(C.p.as_expr().subs(Y, 1), X, domain=QQ)
    while not q.is_zero and q.degree() > 0 and q.eval(0) == 0:
        q = q.exquo(Poly(X, X, domain=QQ))
    if q.is_zero or q.degree() < 2:
        return CyclotomicResult(False, None, [])
    factors = [f for f, _ in factor_univariate(ratio_polynomial(q))[1]
               if f != Poly(T - 1, T, domain=QQ)]
    for f in factors:
        if not _is_cyclotomic(f):
            return CyclotomicResult(True, f, factors)
    return CyclotomicResult(False, None, factors)


# ---------------------------------------------------------------------------
# combined verdict


@dataclass
class FinitenessVerdict:
    kind: str  # "finite" | "infinite" | "inconclusive"
    evidence: list[dict]
    period: PeriodReport
    witness: SeparatedWitness | None
    ratio: CyclotomicResult | None

    def as_dict(self) -> dict:
        return {"verdict": self.kind, "evidence": self.evidence}


def decide_finiteness(C: Correspondence, max_n: int = 8, max_degree: int = 4096,
                      deg_bound: int = 8, den_bound: int = 2) -> FinitenessVerdict:
    """Run all routes and combine them.

    Evidence entries carry ``conditional: true`` when the inference relies on
    the smoothness/irreducibility hypotheses and those fail for this input.
    Raises ``InconsistencyError`` if finite and infinite evidence coexist.
    """
    hyp = C.report.holds
    per = period(C, max_n=max_n, max_degree=max_degree)
    wit = separated_search(C, deg_bound=deg_bound, den_bound=den_bound)
    ratio = cyclotomic_ratio_test(C) if is_homogeneous(C.p) else None
    evidence = []
    finite = infinite = False
    if per.outcome is PeriodOutcome.FINITE:
        finite = True
        evidence.append({"kind": "period", "period": per.period, "conditional": False})
    if wit is not None:
        finite = True
        evidence.append({"kind": "separated-witness", "witness": wit.describe(), **wit.as_dict(),
                         "conditional": not hyp})
    if ratio is not None and ratio.infinite:
        infinite = True
        evidence.append({"kind": "non-cyclotomic-ratio", "minimal_polynomial": print_uni(ratio.witness),
                         "conditional": not hyp})
    if finite and infinite:
        raise InconsistencyError(f"{C!r}: finite and infinite evidence coexist: {evidence}")
    if not evidence:
        evidence.append({"kind": "caps", "period": per.as_dict(), "deg_bound": deg_bound,
                         "den_bound": den_bound})
    kind = "finite" if finite else "infinite" if infinite else "inconclusive"
    return FinitenessVerdict(kind, evidence, per, wit, ratio)
