"""Tabulate the posterior-concentration constant c_d and its minimizer rho*."""

import argparse
import math

from fanobounds.applications import posterior_constant


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmax", type=int, default=20)
    args = ap.parse_args()
    print(f"{'d':>8}  {'c_d':>10}  {'rho*':>10}")
    for d in list(range(1, args.dmax + 1)) + [100, 10**4, 10**6]:
        c, rho = posterior_constant(d)
        print(f"{d:>8}  {c:>10.6f}  {rho:>10.4f}")
    # large-d limit
    print(f"{'limit':>8}  {math.sqrt(math.e) / 8:>10.6f}  {math.sqrt(math.e):>10.4f}")


if __name__ == "__main__":
    main()
