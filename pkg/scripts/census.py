"""Sweep the classifier over a range of odd orders and tally the census.

Usage: python3 scripts/census.py --max 2000 [--csv out.csv]

Prints the running count of exceptional orders at each power of ten and
a kind-by-kind tally at the end; --csv dumps the per-order rows.
"""

import argparse
import csv
import sys
from collections import Counter

from ramcirc.classify import scan_range


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=2000)
    ap.add_argument("--csv", metavar="PATH")
    args = ap.parse_args(argv)

    verdicts = scan_range(3, args.max)
    kinds = Counter(v.kind for v in verdicts)
    exceptional = [v.m for v in verdicts if v.verdict == "exceptional"]

    checkpoint = 100
    running = 0
    for v in verdicts:
        while v.m > checkpoint <= args.max:
            print(f"rho_E({checkpoint}) = {running}")
            checkpoint *= 10
        if v.verdict == "exceptional":
            running += 1
    if checkpoint <= args.max:
        print(f"rho_E({checkpoint}) = {running}")

    print(f"\nscanned {len(verdicts)} odd orders up to {args.max}")
    print(f"exceptional: {len(exceptional)}")
    for kind, n in sorted(kinds.items()):
        print(f"  kind {kind:<16s} {n}")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["m", "l0", "kind", "verdict", "hat_l", "margin"])
            for v in verdicts:
                w.writerow([v.m, v.l0, v.kind, v.verdict, v.hat_l,
                            "" if v.margin is None else f"{v.margin:.6g}"])
        print(f"csv written to {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
