"""Monte Carlo regret of uniform and Hedge play against the sparse-loss environments,
next to the Fano-based floor."""

import argparse

from fanobounds.applications import mc_regret_experiment, sparse_regret_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", default="8:2:512,16:4:1024,32:8:512", help="N:s:T triples")
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    print(f"{'N':>4} {'s':>3} {'T':>6}  {'strategy':>8}  {'regret':>9}  {'stderr':>7}  {'floor':>8}  {'bound':>8}")
    for case in args.cases.split(","):
        n, s, t = (int(x) for x in case.split(":"))
        bound = sparse_regret_bound(n, s, t).bound
        for strategy in ("uniform", "hedge"):
            r = mc_regret_experiment(n, s, t, strategy=strategy, trials=args.trials, seed=args.seed)
            print(f"{n:>4} {s:>3} {t:>6}  {strategy:>8}  {r.avg_mixture_regret:>9.3f}  {r.stderr:>7.3f}"
                  f"  {r.theoretical_floor:>8.3f}  {bound:>8.3f}")


if __name__ == "__main__":
    main()
