"""Track pi_2(a; x) (log x)^2 / x along a geometric ladder of x.

Usage: python3 scripts/almost_prime_ratio.py --a 4 --xmax 1e8

The normalized count staying inside a fixed band is the empirical
fingerprint of the expected x / (log x)^2 growth for semiprimes pq
with p < q < a p.
"""

import argparse
import math
import sys

from ramcirc.numtheory import count_p2_ratio


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=4.0)
    ap.add_argument("--xmax", type=float, default=1e8)
    ap.add_argument("--steps-per-decade", type=int, default=1)
    args = ap.parse_args(argv)

    print(f"{'x':>12s} {'count':>10s} {'count (log x)^2 / x':>20s}")
    x = 1000.0
    while x <= args.xmax * 1.0001:
        n = count_p2_ratio(args.a, int(round(x)))
        norm = n * math.log(x) ** 2 / x
        print(f"{int(round(x)):>12d} {n:>10d} {norm:>20.4f}")
        x *= 10.0 ** (1.0 / args.steps_per_decade)
    return 0


if __name__ == "__main__":
    sys.exit(main())
