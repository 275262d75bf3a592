"""Scan a window of delta values and report where singular vectors appear.

    python scripts/scan_delta.py --ell 3/2 --level 4 --lo -4 --hi 2 --step 1/2
"""

import argparse
from fractions import Fraction

from cgalg.singular import null_space


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ell", default="1/2")
    ap.add_argument("--level", type=int, default=2)
    ap.add_argument("--mu", default="1")
    ap.add_argument("--lo", default="-4")
    ap.add_argument("--hi", default="2")
    ap.add_argument("--step", default="1/2")
    args = ap.parse_args()

    delta, hi, step = Fraction(args.lo), Fraction(args.hi), Fraction(args.step)
    while delta <= hi:
        k = null_space(args.ell, delta, Fraction(args.mu), args.level)
        mark = "  <- singular" if k.dimension else ""
        print(f"delta={str(delta):>6}  dim {k.dimension}{mark}")
        delta += step


if __name__ == "__main__":
    main()
