"""Dump the asymptotic candidate profiles as CSV, one file per offset.

Usage: python3 scripts/profile_figures.py --k 50 --samples 400 --outdir profiles/

Each file tabulates mu0(x), mu1(x), mu2(x) and the bound along
q/p = x in (1, 2); the crossings locate the regime boundaries that the
gamma constants pin down.
"""

import argparse
import csv
import pathlib
import sys

from ramcirc.bounds import C_OFFSETS
from ramcirc.classify import profile_point


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=50)
    ap.add_argument("--samples", type=int, default=400)
    ap.add_argument("--outdir", default="profiles")
    args = ap.parse_args(argv)

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for c in C_OFFSETS:
        path = outdir / f"profile_c{c:+d}_k{args.k}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "mu0", "mu1", "mu2", "rb"])
            for i in range(args.samples):
                x = 1.0 + (i + 0.5) / args.samples
                if abs(x - 1.5) < 1e-9:
                    continue  # removable singularity of mu2
                pt = profile_point(c, args.k, x)
                w.writerow([f"{pt.x:.6f}", f"{pt.mu0:.9f}", f"{pt.mu1:.9f}",
                            f"{pt.mu2:.9f}", f"{pt.rb:.9f}"])
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
