"""Extend the semiprime family tables past their pinned rows.

Usage: python3 scripts/family_tables.py --a 1 --c -5 --ymax 200 [--digits 30]

For every y with both family coordinates prime, prints p, q, the ratio
q/p and the three candidate margins mu_i - rb at covalency l0 + 2.
Margins straddling zero mark the exceptional members.
"""

import argparse
import sys

import mpmath as mp

from ramcirc.bounds import trivial_bound
from ramcirc.classify import semiprime_candidates
from ramcirc.numtheory import family_scan


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=int, default=1)
    ap.add_argument("--c", type=int, default=-5)
    ap.add_argument("--ymax", type=int, required=True)
    ap.add_argument("--digits", type=int, default=30)
    args = ap.parse_args(argv)

    points = family_scan(args.a, args.c, args.ymax, require_prime=True)
    for pt in points:
        l0 = trivial_bound(pt.m)
        with mp.workdps(args.digits):
            mu0, mu1, mu2 = semiprime_candidates(pt.p, pt.q, l0,
                                                 digits=args.digits)
            rb = 2 * mp.sqrt(pt.m - l0 - 3)
            margins = [float(v - rb) for v in (mu0, mu1, mu2)]
        flag = "*" if max(margins) <= 0 else " "
        print(f"y={pt.y:<5d} p={pt.p:<15d} q={pt.q:<15d} "
              f"q/p={pt.q / pt.p:.4f} margins=({margins[0]:+.3e}, "
              f"{margins[1]:+.3e}, {margins[2]:+.3e}) {flag}")
    print(f"\n{len(points)} prime pairs (a={args.a}, c={args.c}, "
          f"y <= {args.ymax}); * marks fully Ramanujan rows")
    return 0


if __name__ == "__main__":
    sys.exit(main())
