"""Kernel dimension of S(7) at each critical l, with timings."""

import argparse
import json
import time

from cgwrep.kernel import kernel_at
from cgwrep.subspaces import critical_sets

EXPECTED = {"r^-21": 1, "r^-7": 6, "-r^-9": 7, "r^3": 14, "r^-1": 21, "-r^3": 35}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--out", default=None, help="write results as JSON")
    args = ap.parse_args()
    rows = []
    for lv in critical_sets(args.n).l_values:
        t0 = time.time()
        rep = kernel_at(args.n, lv)
        row = rep.to_json()
        row["seconds"] = round(time.time() - t0, 2)
        if args.n == 7:
            row["expected_k"] = EXPECTED[row["l"]]
        rows.append(row)
        print(f"l={row['l']:>7}  k={row['k']:>3}  rank={row['rank']:>3}  "
              f"{row.get('expected_k', '')}  {row['seconds']}s", flush=True)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
