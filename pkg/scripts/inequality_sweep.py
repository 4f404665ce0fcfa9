"""Sweep the defect a2 - a1^2/2 over a grid of (r, a, b) and print the worst case."""

import argparse
import time

from tyz.algebra import inequality_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=20, help="bound for r, a and b")
    args = ap.parse_args()
    t0 = time.perf_counter()
    sweep = inequality_sweep(args.max, args.max, args.max)
    print(f"{len(sweep.rows)} triples, all defects negative ({time.perf_counter() - t0:.2f}s)")
    print(f"largest defect {sweep.max_defect} = {float(sweep.max_defect):.6g} at (r,a,b)={sweep.argmax.as_tuple()}")


if __name__ == "__main__":
    main()
