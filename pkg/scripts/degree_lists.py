"""Degrees of irreducible H(D_n)-modules below n(n-1), with witnesses."""

import argparse

from cgwrep.specht import degree_witnesses, generic_degrees


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ns", type=int, nargs="*", default=list(range(4, 11)))
    args = ap.parse_args()
    for n in args.ns:
        wit = degree_witnesses(n)
        extra = sorted(set(wit) - set(generic_degrees(n)))
        print(f"n={n} bound={n * (n - 1)}: {list(wit)}  (beyond generic: {extra})")
        for d, dps in wit.items():
            print(f"    {d:>4}: " + "  ".join(map(str, dps)))


if __name__ == "__main__":
    main()
