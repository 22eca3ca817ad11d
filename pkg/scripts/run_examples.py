"""Finiteness verdicts, Omega sizes and certificates for the standard fixtures.

    python3 scripts/run_examples.py [--out results/examples.json] [--max-n 6]
"""

import argparse
import json
import time
import warnings
from dataclasses import replace
from pathlib import Path

from corrsolve import DEFAULT_CAPS, HypothesisWarning, decide_finiteness, new_correspondence, omega, parse
from corrsolve.cli import run

FIXTURES = {
    "cubic": "x*y - x^2*y - x*y^2 - 1",
    "homogeneous": "x^2 + 3*x*y + y^2",
    "hyperbola": "x*y - 1",
    "parabola": "y^2 - x",
    "anharmonic": "(x + y - 1)*(x*y - 1)",
    "circle": "x^2 + y^2 - 1",
}


def analyze(name, text, caps):
    t = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HypothesisWarning)
        C = new_correspondence(parse(text))
    v = decide_finiteness(C, max_n=caps.max_n, max_degree=caps.max_degree,
                          deg_bound=caps.deg_bound, den_bound=caps.den_bound)
    om = omega(C)
    row = {"name": name, "poly": text, "verdict": v.kind, "period": v.period.period,
           "evidence": [e["kind"] for e in v.evidence], "omega_points": len(om.points),
           "warnings": len(caught)}
    if v.kind == "finite":
        code, rep = run(["certify", "-p", text, "--height", str(caps.seed_height)])
        row["certificate"] = rep.certificate
        row["certify_exit"] = code
    row["seconds"] = round(time.perf_counter() - t, 2)
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    caps = replace(DEFAULT_CAPS, max_n=args.max_n)
    rows = [analyze(name, text, caps) for name, text in FIXTURES.items()]
    for r in rows:
        cert = r.get("certificate")
        extra = f"c = {cert['c']}" if cert else ""
        print(f"{r['name']:>11}  {r['verdict']:<12} period={r['period']!s:<5} |Omega|={r['omega_points']:<3}"
              f" {r['seconds']:>6.2f}s  {extra}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps({"caps": caps.as_dict(), "rows": rows}, indent=2))


if __name__ == "__main__":
    main()
