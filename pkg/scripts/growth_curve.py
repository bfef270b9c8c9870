"""Orbit growth: number of group elements g with (g h, h) <= r, by word length.

    python3 scripts/growth_curve.py --family hessian --max-len 4
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from enriques_salem.config import GrowthConfig


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="hessian")
    ap.add_argument("--max-len", type=int, default=4)
    ap.add_argument("--radii", default="10,20,50,100,200,500,1000,5000")
    args = ap.parse_args()

    radii = [Fraction(r) for r in args.radii.split(",")]
    print("r".rjust(8) + "".join(f"{'L=' + str(n):>10}" for n in range(args.max_len + 1)))
    for r in radii:
        counts = [GrowthConfig(args.family, r, n).run().count for n in range(args.max_len + 1)]
        print(f"{str(r):>8}" + "".join(f"{c:>10}" for c in counts))


if __name__ == "__main__":
    main()
