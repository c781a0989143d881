"""Symbolic det S(n) for small n, trial-factored, with its l-roots."""

import argparse
import time

from cgwrep.kernel import det_sum
from cgwrep.subspaces import critical_sets


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ns", type=int, nargs="*", default=[4, 5])
    args = ap.parse_args()
    for n in args.ns:
        t0 = time.time()
        ff = det_sum(n, "symbolic", allow_large=n >= 7)
        roots = sorted(map(str, ff.l_roots()))
        crit = sorted(map(str, set(critical_sets(n).l_values)))
        print(f"n={n} ({time.time() - t0:.1f}s)\n  det = {ff}\n  l-roots  {roots}\n"
              f"  critical {crit}\n  {'agree' if roots == crit else 'DIFFER'}")


if __name__ == "__main__":
    main()
