"""Orbit sizes over rational seeds, compared with the period-based size bound.

    python3 scripts/orbit_census.py -p "x*y - x^2*y - x*y^2 - 1" --height 5
"""

import argparse
import json
import warnings
from collections import Counter

from corrsolve import DEFAULT_CAPS, HypothesisWarning, new_correspondence, parse, period
from corrsolve.omega import avoids_omega, omega
from corrsolve.orbits import orbit_over, orbit_size, orbit_size_bound, rational_points_of_height


def census(text, height, cap):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        C = new_correspondence(parse(text))
    per = period(C)
    bound = orbit_size_bound(C, per.period) if per.period else None
    om = omega(C)
    sizes, status, flags = Counter(), Counter(), Counter()
    seeds = rational_points_of_height(height)
    for x0 in seeds:
        b = orbit_over(C, x0, degree_cap=cap)
        status[b.status.value] += 1
        if b.closed:
            sizes[orbit_size(C, b)] += 1
        flags["meets_omega"] += not avoids_omega(om, b)
        flags["meets_infinity"] += b.meets_infinity
    return {"poly": text, "period": per.period, "bound": bound, "seeds": len(seeds), "cap": cap,
            "status": dict(status), "sizes": dict(sorted(sizes.items())), "flags": dict(flags)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-p", "--poly", default="x*y - x^2*y - x*y^2 - 1")
    ap.add_argument("--height", type=int, default=4)
    ap.add_argument("--cap", type=int, default=DEFAULT_CAPS.orbit_cap)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    out = census(args.poly, args.height, args.cap)
    if args.json:
        print(json.dumps(out, indent=2))
        return
    print(f"p = {out['poly']}: period {out['period']}, size bound {out['bound']}, {out['seeds']} seeds")
    print(f"  status: {out['status']}")
    print(f"  closed orbit sizes: {out['sizes']}")
    print(f"  flags: {out['flags']}")
    if out["bound"] is not None and out["sizes"]:
        print(f"  largest closed orbit / bound: {max(out['sizes'])}/{out['bound']}")


if __name__ == "__main__":
    main()
