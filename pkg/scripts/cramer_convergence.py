"""Empirical binomial tail exponent (1/n) ln P(S_n >= n x) against -kl(x, theta)."""

import argparse

from fanobounds.applications import cramer_rate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, default=0.5)
    ap.add_argument("--x", type=float, default=0.75)
    args = ap.parse_args()
    print(f"{'n':>8}  {'empirical':>11}  {'limit':>11}  {'gap':>9}")
    for n in (10, 30, 100, 300, 1000, 3000, 10**4, 10**5):
        r = cramer_rate(args.theta, args.x, n)
        print(f"{n:>8}  {r.empirical_rate:>11.6f}  {r.limit_rate:>11.6f}  {r.limit_rate - r.empirical_rate:>9.2e}")


if __name__ == "__main__":
    main()
