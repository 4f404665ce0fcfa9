"""Compare the radial jet recursion with the polynomial route for the disk and its dual."""

import argparse

from tyz.recursion import CONVENTIONS, calibrate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--R", type=int, default=6)
    args = ap.parse_args()
    for model in ("disk", "dual-disk"):
        print(f"== {model}")
        for row in calibrate(model, args.R, CONVENTIONS):
            print(f"  {row['convention']:8} j={row['j']}  c_j={str(row['c_j']):>12}  "
                  f"a_j={str(row['a_j_recursion']):>14}  truth={str(row['a_j_truth']):>4}  match={row['match']}")


if __name__ == "__main__":
    main()
