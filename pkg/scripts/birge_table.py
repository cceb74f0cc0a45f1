"""Print c_N, d_N and the Massart constant for a range of N."""

import argparse

from fanobounds import birge


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5, 7, 10, 20, 100, 1000, 10**6])
    args = ap.parse_args()
    print(f"{'N':>8}  {'c_N':>10}  {'d_N':>10}  {'massart':>10}")
    for row in birge.comparison_table(args.n):
        print(f"{row.n_hypotheses:>8}  {row.c_n:>10.6f}  {row.d_n:>10.6f}  {row.massart:>10.6f}")


if __name__ == "__main__":
    main()
