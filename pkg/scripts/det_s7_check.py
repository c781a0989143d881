"""Compare det S(7) with its closed form at random admissible points."""

import argparse
import time

from cgwrep.field import random_points
from cgwrep.kernel import det_at_point, det_s7_closed_form


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    target = det_s7_closed_form()
    mismatches = 0
    for l0, r0 in random_points(args.points, args.seed, n=7):
        t0 = time.time()
        ok = det_at_point(7, l0, r0) == target.evaluate(l0, r0)
        mismatches += not ok
        print(f"l={l0} r={r0}: {'match' if ok else 'MISMATCH'} ({time.time() - t0:.2f}s)",
              flush=True)
    print("MATCH" if not mismatches else f"{mismatches} mismatches")
    raise SystemExit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
