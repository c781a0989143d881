"""Sweep the conjugate action table over all valid indices."""

import argparse
from collections import Counter

from cgwrep.kernel import ACTION_CASES, action_table_sweep, action_entry_valid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ns", type=int, nargs="*", default=[5, 6])
    args = ap.parse_args()
    for n in args.ns:
        sw = action_table_sweep(n)
        per_case = Counter()
        for case in ACTION_CASES:
            for j in range(2, n + 1):
                for i in range(1, j):
                    for s in range(1, n):
                        ts = (0,) if case.startswith(("LO", "LI")) else range(1, n)
                        per_case[case] += sum(action_entry_valid(n, case, i, j, s, t) for t in ts)
        print(f"n={n}: {sw.passed}/{sw.checked} pass, exclusions {sw.exclusions}")
        print("  " + " ".join(f"{c}:{per_case[c]}" for c in ACTION_CASES))


if __name__ == "__main__":
    main()
