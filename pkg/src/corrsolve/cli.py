"""Command-line front end: ``corrsolve <command> -p <poly> [options]``.

Exit codes: 0 definitive answer, 1 invalid input, 2 inconclusive or
insufficient, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from .algebraic import INF, CBox, CurvePoint, as_proj, from_box
from .config import DEFAULT_CAPS as D
from .correspondence import Correspondence, HypothesisWarning, new_correspondence
from .finiteness import (InconsistencyError, PeriodOutcome, decide_finiteness, period)
from .omega import avoids_omega, omega, omega_size_bound
from .orbits import (orbit_closure, orbit_over, orbit_report, orbit_size,
                     rational_points_of_height)
from .parser import PolySyntaxError, parse, parse_univariate, print_canonical
from .theta import (CertificateError, ThetaError, certify_finite, check_partials_nonvanishing, finite_orbit_count_bound,
                    places_at_infinity, theta_of_orbit)

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_INTERNAL = 0, 1, 2, 3

REPORT_KEYS = ("input", "hypotheses", "verdict", "evidence", "omega", "orbits", "certificate", "timing")


class InputError(ValueError):
    pass


@dataclass
class AnalysisReport:
    input: dict
    hypotheses: dict | None = None
    verdict: str | None = None
    evidence: list = field(default_factory=list)
    omega: dict | None = None
    orbits: list | None = None
    certificate: dict | None = None
    timing: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK
    lines: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in REPORT_KEYS}

    def say(self, line: str) -> None:
        self.lines.append(line)

    @contextmanager
    def timed(self, name: str):
        t = time.perf_counter()
        try:
            yield
        finally:
            self.timing[name] = round(time.perf_counter() - t, 4)


# ---------------------------------------------------------------------------
# input parsing


def _split_top(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [s.strip() for s in parts]


def parse_coordinate(text: str):
    """'inf', a rational 'a' or 'a/b', or 'root:<poly>:box(lo,hi)' / 'root:<poly>:box(re_lo,re_hi,im_lo,im_hi)'."""
    t = text.strip()
    if t.lower() in ("inf", "infinity", "oo"):
        return INF
    if t.startswith("root:"):
        try:
            poly_text, box_text = t[5:].rsplit(":", 1)
        except ValueError:
            raise InputError(f"malformed root coordinate {text!r}; expected root:<poly>:box(...)") from None
        f = parse_univariate(poly_text)
        if not (box_text.startswith("box(") and box_text.endswith(")")):
            raise InputError(f"malformed box {box_text!r}")
        try:
            nums = [Fraction(s) for s in _split_top(box_text[4:-1])]
        except ValueError:
            raise InputError(f"malformed box bounds in {box_text!r}") from None
        if len(nums) == 2:
            box = CBox(nums[0], nums[1])
        elif len(nums) == 4:
            box = CBox(*nums)
        else:
            raise InputError("box needs 2 (real) or 4 (complex) bounds")
        try:
            return from_box(f, box)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    try:
        return as_proj(Fraction(t))
    except ValueError:
        raise InputError(f"cannot read coordinate {text!r}") from None


def parse_point(text: str) -> CurvePoint:
    parts = _split_top(text)
    if len(parts) != 2:
        raise InputError(f"start point must be 'a,b', got {text!r}")
    return CurvePoint(parse_coordinate(parts[0]), parse_coordinate(parts[1]))


def _load(args, report: AnalysisReport) -> Correspondence:
    p = parse(args.poly)
    report.input = {"poly": args.poly, "canonical": print_canonical(p), "command": args.command}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HypothesisWarning)
        with report.timed("hypotheses"):
            C = new_correspondence(p, assume_irreducible=args.assume_irreducible)
    report.hypotheses = dict(C.report.summary(), holds=C.report.holds,
                             warnings=[str(w.message) for w in caught])
    report.say(f"p = {print_canonical(C.p)}   (deg_x {C.dx}, deg_y {C.dy})")
    h = C.report
    report.say(f"hypotheses: absolutely irreducible: {h.absolutely_irreducible}"
               f"{'' if h.absolute_factors is None else f' (absolute factor count {h.absolute_factors})'}; "
               f"smooth: {h.smooth}" + ("" if h.smooth else f" (singular at {h.singular_points})"))
    return C


# ---------------------------------------------------------------------------
# commands


def _finiteness(C: Correspondence, args, report: AnalysisReport) -> None:
    with report.timed("finiteness"):
        v = decide_finiteness(C, max_n=args.max_n, max_degree=args.max_degree,
                              deg_bound=args.deg_bound, den_bound=args.den_bound)
    report.verdict = v.kind
    report.evidence = v.evidence
    line = f"verdict: {v.kind}"
    if v.period.outcome is PeriodOutcome.FINITE:
        line += f" (period {v.period.period})"
    report.say(line)
    if v.witness is not None:
        report.say(f"  witness: {v.witness.describe()}  [cofactor {print_canonical(v.witness.cofactor)}]")
    if v.ratio is not None and v.ratio.infinite:
        report.say(f"  non-cyclotomic root ratio with minimal polynomial {v.evidence[-1]['minimal_polynomial']}")
    if v.kind == "inconclusive":
        report.say(f"  period: {v.period.outcome.value} (max_n={args.max_n}); no separated multiple with "
                   f"deg_bound={args.deg_bound}, den_bound={args.den_bound}")
        report.exit_code = EXIT_INCONCLUSIVE
    if any(e.get("conditional") for e in v.evidence):
        report.say("  note: some evidence relies on hypotheses that fail for this input")


def _omega(C: Correspondence, report: AnalysisReport):
    with report.timed("omega"):
        om = omega(C)
    report.omega = dict(om.as_dict(), size_bound=omega_size_bound(C, om))
    report.say(f"Omega: x-poly {report.omega['x_poly']}, y-poly {report.omega['y_poly']}, "
               f"{len(om.points)} points (bound {report.omega['size_bound']})")
    return om


def cmd_analyze(args, report: AnalysisReport) -> None:
    C = _load(args, report)
    _finiteness(C, args, report)
    _omega(C, report)


def cmd_finiteness(args, report: AnalysisReport) -> None:
    C = _load(args, report)
    _finiteness(C, args, report)


def cmd_period(args, report: AnalysisReport) -> None:
    C = _load(args, report)
    with report.timed("period"):
        per = period(C, max_n=args.max_n, max_degree=args.max_degree)
    report.evidence = [dict(kind="period", **per.as_dict())]
    if per.outcome is PeriodOutcome.FINITE:
        report.verdict = "finite"
        report.say(f"period: {per.period}")
    else:
        report.verdict = "inconclusive"
        report.say(f"period: {per.outcome.value} (max_n={args.max_n}, max_degree={args.max_degree})")
        report.exit_code = EXIT_INCONCLUSIVE
    report.say("bidegree trace: " + ", ".join(f"{a}x{b}" for a, b in per.trace))


def cmd_omega(args, report: AnalysisReport) -> None:
    C = _load(args, report)
    om = _omega(C, report)
    for pt in om.points:
        report.say(f"  {pt!r}")


def cmd_orbit(args, report: AnalysisReport) -> None:
    C = _load(args, report)
    start = parse_point(args.start)
    try:
        with report.timed("orbit"):
            bundle = orbit_closure(C, start, degree_cap=args.cap)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    with report.timed("report"):
        rep = orbit_report(C, bundle, materialize=bundle.closed and args.points)
    report.orbits = [dict(rep.as_dict(), start=args.start)]
    report.verdict = bundle.status.value
    report.say(f"orbit of {start!r}: {bundle.status.value} (cap {args.cap}, {bundle.rounds} rounds)")
    report.say(f"  A: {_short(report.orbits[0]['a_poly'], bundle.a_poly)}{' + inf' if bundle.a_inf else ''}")
    report.say(f"  B: {_short(report.orbits[0]['b_poly'], bundle.b_poly)}{' + inf' if bundle.b_inf else ''}")
    if bundle.closed:
        report.say(f"  size: {rep.size}")
        for pt in rep.bundle.points or ():
            report.say(f"    {pt!r}")
    else:
        report.exit_code = EXIT_INCONCLUSIVE
    report.say(f"  meets Omega: {rep.meets_omega}; meets infinity: {rep.meets_infinity}")
    if any(z is not INF and z.degree > 1 for z in (start.first, start.second)):
        report.say("  (irrational start: the bundle is the union of the conjugate orbits)")


def _short(text: str, f, limit: int = 100) -> str:
    return text if len(text) <= limit else f"<degree {f.degree()} polynomial, {len(text)} chars; see --json>"


def _seed_orbits(C: Correspondence, om, height: int, cap: int, prefilter: bool = False):
    """Orbits over rational first coordinates of height <= height, one per orbit, ordered by seed.

    With ``prefilter``, seeds over roots of Omega's x-poly or with infinity
    in their fiber are dropped before any expansion.
    """
    seen = []
    for x0 in rational_points_of_height(height):
        z = as_proj(x0)
        if any(z.is_root_of(b.a_poly) for b in seen if b.closed):
            continue
        if prefilter and (z.is_root_of(om.x_poly) or z.is_root_of(C.lc_y)):
            continue
        bundle = orbit_over(C, x0, degree_cap=cap)
        seen.append(bundle)
        yield x0, bundle


def cmd_search_orbits(args, report: AnalysisReport) -> None:
    C = _load(args, report)
    om = _omega(C, report)
    rows = []
    with report.timed("search"):
        for x0, bundle in _seed_orbits(C, om, args.height, args.cap):
            size = orbit_size(C, bundle) if bundle.closed else None
            rows.append({"seed": str(x0), "status": bundle.status.value, "size": size,
                         "a_poly": bundle.describe()["a_poly"], "b_poly": bundle.describe()["b_poly"],
                         "meets_omega": not avoids_omega(om, bundle), "meets_infinity": bundle.meets_infinity})
    report.orbits = rows
    closed = [r for r in rows if r["status"] == "closed"]
    report.verdict = "closed-orbits-found" if closed else "no-closed-orbits"
    report.evidence = [{"kind": "orbit-census", "seeds": len(rows), "closed": len(closed),
                        "max_closed_size": max((r["size"] for r in closed), default=None),
                        "height": args.height, "cap": args.cap}]
    for r in rows:
        flags = "".join([" [Omega]" if r["meets_omega"] else "", " [inf]" if r["meets_infinity"] else ""])
        size = "" if r["size"] is None else f" size {r['size']}"
        report.say(f"  x = {r['seed']:>6}: {r['status']}{size}{flags}")
    report.say(f"{len(closed)} closed of {len(rows)} distinct orbits; "
               f"largest closed size observed: {report.evidence[0]['max_closed_size']}")


def cmd_certify(args, report: AnalysisReport) -> None:
    C = _load(args, report)
    om = _omega(C, report)
    with report.timed("places"):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", HypothesisWarning)
            places = places_at_infinity(C)
    report.say(f"{len(places)} places at infinity; finite-orbit count bound "
               f"{finite_orbit_count_bound(C, om, places)}")
    thetas, rows, outcome = [], [], None
    with report.timed("certify"):
        for x0, bundle in _seed_orbits(C, om, args.height, args.cap, prefilter=True):
            row = {"seed": str(x0), "status": bundle.status.value}
            rows.append(row)
            try:
                t = theta_of_orbit(C, bundle, om, seed=f"x={x0}")
            except ThetaError as exc:
                row["skipped"] = str(exc)
                continue
            lem = check_partials_nonvanishing(C, t)
            if not lem.passed:
                raise CertificateError(f"partial-derivative check failed on an Omega-avoiding orbit: {lem.as_dict()}")
            thetas.append(t)
            row["theta"] = str(t)
            if len(thetas) >= 2:
                outcome = certify_finite(C, thetas, places)
                if outcome.certificate is not None:
                    break
            if len(thetas) >= args.max_orbits:
                break
    report.orbits = rows
    report.say(f"{len(thetas)} Thetas from {len(rows)} seed orbits (height <= {args.height})")
    if outcome is None or outcome.certificate is None:
        report.verdict = "insufficient"
        report.evidence = [{"kind": "certify", "thetas": len(thetas), "seeds": len(rows)}]
        report.say("insufficient: no pole-free product of Thetas found")
        report.exit_code = EXIT_INCONCLUSIVE
        return
    cert = outcome.certificate
    report.certificate = cert.as_dict()
    report.verdict = "finite"
    report.evidence = [{"kind": "certificate", "divisor_rows": outcome.matrix.rows, "verified": cert.verify()}]
    report.say(f"certificate: {cert.f0} = {cert.c} * {cert.g0} on the curve")
    report.say(f"  exponents {list(cert.exponents)} over seeds {list(cert.seeds)}")
    report.say(f"  cofactor {print_canonical(cert.cofactor)}; verified exactly: {cert.verify()}")


COMMANDS = {
    "analyze": cmd_analyze,
    "period": cmd_period,
    "finiteness": cmd_finiteness,
    "orbit": cmd_orbit,
    "omega": cmd_omega,
    "certify": cmd_certify,
    "search-orbits": cmd_search_orbits,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="corrsolve", description="Analyze the correspondence p(x, y) = 0 on P^1 x P^1.")
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--poly", required=True, help="polynomial in x and y, e.g. 'x*y - 1'")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--assume-irreducible", action="store_true",
                        help="skip the absolute irreducibility check")
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-n", type=int, default=D.max_n, help="period iteration cap")
    caps.add_argument("--max-degree", type=int, default=D.max_degree, help="relation degree cap")
    caps.add_argument("--deg-bound", type=int, default=D.deg_bound, help="separated-multiple degree bound")
    caps.add_argument("--den-bound", type=int, default=D.den_bound, help="separated-multiple denominator exponent bound")
    orbit_cap = argparse.ArgumentParser(add_help=False)
    orbit_cap.add_argument("--cap", type=int, default=D.orbit_cap, help="orbit degree cap")
    for name in ("analyze", "finiteness"):
        sub.add_parser(name, parents=[common, caps])
    sub.add_parser("period", parents=[common, caps])
    sub.add_parser("omega", parents=[common])
    o = sub.add_parser("orbit", parents=[common, orbit_cap])
    o.add_argument("--start", required=True, help="'a,b' with rational, 'inf' or root:<poly>:box(...) coordinates")
    o.add_argument("--no-points", dest="points", action="store_false", help="skip listing the orbit points")
    c = sub.add_parser("certify", parents=[common, orbit_cap])
    c.add_argument("--height", type=int, default=D.seed_height, help="seed height bound H")
    c.add_argument("--max-orbits", type=int, default=D.max_orbits, help="stop after this many Thetas")
    s = sub.add_parser("search-orbits", parents=[common, orbit_cap])
    s.add_argument("--height", type=int, default=4, help="seed height bound H")
    return ap


def run(argv: list[str] | None = None, args: argparse.Namespace | None = None) -> tuple[int, AnalysisReport]:
    args = args if args is not None else build_parser().parse_args(argv)
    report = AnalysisReport(input={"poly": args.poly, "command": args.command})
    t = time.perf_counter()
    try:
        COMMANDS[args.command](args, report)
    except (PolySyntaxError, InputError) as exc:
        report.verdict = "invalid-input"
        report.evidence = [{"kind": "error", "message": str(exc)}]
        report.exit_code = EXIT_INPUT
    except ValueError as exc:  # rejected by validation (zero, non-squarefree, line factors)
        report.verdict = "invalid-input"
        report.evidence = [{"kind": "error", "message": str(exc)}]
        report.exit_code = EXIT_INPUT
    except (InconsistencyError, CertificateError, AssertionError) as exc:
        report.verdict = "internal-error"
        report.evidence = [{"kind": "invariant-violation", "message": str(exc)}]
        report.exit_code = EXIT_INTERNAL
    report.timing["total"] = round(time.perf_counter() - t, 4)
    if report.exit_code in (EXIT_INPUT, EXIT_INTERNAL):
        report.say(f"error: {report.evidence[0]['message']}")
    return report.exit_code, report


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code, report = run(args=args)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, default=str))
    else:
        out = sys.stderr if code in (EXIT_INPUT, EXIT_INTERNAL) else sys.stdout
        for line in report.lines:
            print(line, file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
