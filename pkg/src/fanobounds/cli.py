"""Command-line front end.

    fanobounds div --f kl --p 1,0 --q 0.5,0.5
    fanobounds bounds --q-bar 0.5 --d-bar 0
    fanobounds bounds --family-file fam.csv --f hellinger
    fanobounds birge 2 3 7
    fanobounds apps posterior --d 2
    fanobounds apps regret --N 16 --s 4 --T 1600
    fanobounds apps cramer --theta 0.5 --x 0.75 --n 1000
    fanobounds apps dd --psi 0.1 --n 10 --c 2
    fanobounds verify --seed 0 --budget quick

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 a bound's validity condition does not hold.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Sequence

from . import applications as apps
from . import birge, fano, verify
from .divergences import ConvexGenerator, FiniteDist, divergence_finite
from .errors import InputError, PreconditionError
from .extreal import ExtReal, ext

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class _Fmt:
    def __init__(self, precise: bool):
        self.precise = precise

    def __call__(self, x) -> str:
        if isinstance(x, ExtReal):
            if x.infinite:
                return "inf"
            x = x.value
        if isinstance(x, bool):
            return str(x).lower()
        if isinstance(x, int):
            return str(x)
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x) if self.precise else f"{x:.6g}"


def _parse_float(tok: str) -> float:
    tok = tok.strip().lower()
    if tok in ("inf", "+inf", "infinity"):
        return math.inf
    try:
        return float(tok)
    except ValueError:
        raise InputError(f"cannot parse {tok!r} as a number") from None


def _parse_list(text: str) -> list[float]:
    return [_parse_float(t) for t in text.split(",") if t.strip()]


def _emit(rows: list[dict], fmt: str, f: _Fmt, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(rows[0]))
        for r in rows:
            w.writerow([f(v) if not isinstance(v, str) else v for v in r.values()])
    elif fmt == "json-lines":
        for r in rows:
            rec = {k: (v if isinstance(v, str) else f(v)) for k, v in r.items()}
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")
    else:
        for r in rows:
            out.write("  ".join(f"{k}={v if isinstance(v, str) else f(v)}" for k, v in r.items()) + "\n")


# --- commands -----------------------------------------------------------------


def cmd_div(args, out) -> int:
    f = ConvexGenerator.parse(args.f)
    p = FiniteDist(tuple(_parse_list(args.p)))
    q = FiniteDist(tuple(_parse_list(args.q)))
    out.write(_Fmt(args.precise)(divergence_finite(f, p, q)) + "\n")
    return EXIT_OK


def read_family_file(path: str) -> list[fano.FamilyEntry]:
    """One ``weight,p_exp,q_exp,div`` record per line; blank lines and # comments skipped."""
    entries = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 4:
                raise InputError(f"{path}:{lineno}: expected 4 fields weight,p_exp,q_exp,div, got {len(row)}")
            w, p, q, d = (_parse_float(x) for x in row)
            entries.append(fano.FamilyEntry(w, p, q, ext(d)))
    return entries


def cmd_bounds(args, out) -> int:
    f = ConvexGenerator.parse(args.f)
    if args.family_file:
        red = fano.reduce(read_family_file(args.family_file))
    else:
        if args.q_bar is None or args.d_bar is None:
            raise InputError("give --q-bar and --d-bar, or --family-file")
        d_bar = _parse_float(args.d_bar)
        if d_bar < 0:
            raise InputError("--d-bar must be non-negative")
        p_bar = 0.0 if args.p_bar is None else args.p_bar
        for name, v in (("--p-bar", p_bar), ("--q-bar", args.q_bar)):
            if not (0.0 <= v <= 1.0):
                raise InputError(f"{name} must lie in [0, 1], got {v!r}")
        red = fano.ReducedPair(p_bar, args.q_bar, ext(d_bar))
    fmt = _Fmt(args.precise)
    rows = [{"family": r.family, "value": r.value, "vacuous": r.vacuous} for r in fano.all_reports(red, f)]
    if args.format == "plain":
        out.write(f"p_bar={fmt(red.p_bar)}  q_bar={fmt(red.q_bar)}  d_bar={fmt(red.d_bar)}\n")
    _emit(rows, args.format, fmt, out)
    return EXIT_OK


def cmd_birge(args, out) -> int:
    ns = []
    for tok in args.n:
        for part in tok.split(","):
            if not part.strip():
                continue
            try:
                ns.append(int(part))
            except ValueError:
                raise InputError(f"N must be an integer, got {part!r}") from None
    if not ns:
        raise InputError("give at least one N")
    table = birge.comparison_table(ns)
    rows = [{"N": r.n_hypotheses, "c_N": r.c_n, "d_N": r.d_n, "massart": r.massart} for r in table]
    _emit(rows, args.format, _Fmt(args.precise), out)
    return EXIT_OK


def cmd_apps(args, out) -> int:
    fmt = _Fmt(args.precise)
    if args.app == "posterior":
        c_d, rho = apps.posterior_constant(args.d)
        row = {"d": args.d, "c_d": c_d, "rho_star": rho}
        if args.n is not None:
            eps, _ = apps.posterior_minimax_bound(apps.GaussianModel(args.d, args.n, args.sigma))
            row["epsilon_n"] = eps
        rows = [row]
    elif args.app == "regret":
        b = apps.sparse_regret_bound(args.N, args.s, args.T)
        row = {
            "N": args.N, "s": args.s, "T": args.T, "bound": b.bound, "epsilon_used": b.epsilon_used,
            "regime": b.regime, "active_term": b.active_term,
        }
        if args.simulate:
            res = apps.mc_regret_experiment(
                args.N, args.s, args.T, strategy=args.strategy, trials=args.trials, seed=args.seed, eta=args.eta
            )
            row.update({"strategy": args.strategy, "avg_regret": res.avg_mixture_regret, "stderr": res.stderr})
        rows = [row]
    elif args.app == "cramer":
        r = apps.cramer_rate(args.theta, args.x, args.n)
        rows = [{"theta": args.theta, "x": args.x, "n": args.n, "empirical_rate": r.empirical_rate, "limit_rate": r.limit_rate}]
    else:
        if args.psi is not None:
            psi = ext(_parse_float(args.psi))
        elif args.epsilon is not None and args.sigma is not None:
            psi = apps.psi_gaussian(args.epsilon, args.sigma)
        else:
            raise InputError("give --psi, or --epsilon with --sigma")
        rows = [{"psi": psi, "n": args.n, "c": args.c, "bound": apps.posterior_dd_bound(psi, args.n, args.c)}]
    _emit(rows, args.format, fmt, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    reports = verify.run_suite(args.seed, args.budget)
    if args.format == "json-lines":
        out.write(verify.to_json_lines(reports))
    else:
        rows = [
            {"check": r.check_name, "module": r.module, "cases": r.cases_run, "max_violation": r.max_violation,
             "tolerance": r.tolerance, "passed": r.passed, "seed": r.seed}
            for r in reports
        ]
        _emit(rows, args.format, _Fmt(True), out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanobounds", description="Fano-type lower bounds and their numerical checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="plain"):
        p.add_argument("--precise", action="store_true", help="print full precision instead of 6 significant digits")
        p.add_argument("--format", choices=("csv", "json-lines", "plain"), default=default_format)

    p = sub.add_parser("div", help="f-divergence between two finite distributions")
    p.add_argument("--f", default="kl", help="kl, chi2 or hellinger")
    p.add_argument("--p", required=True, help="comma-separated weights")
    p.add_argument("--q", required=True, help="comma-separated weights")
    p.add_argument("--precise", action="store_true")
    p.set_defaults(func=cmd_div)

    p = sub.add_parser("bounds", help="every solved bound for an averaged pair")
    p.add_argument("--f", default="kl")
    p.add_argument("--p-bar", type=float)
    p.add_argument("--q-bar", type=float)
    p.add_argument("--d-bar", help="average divergence; 'inf' accepted")
    p.add_argument("--family-file", help="CSV with weight,p_exp,q_exp,div per line")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("birge", help="c_N, d_N and the Massart constant")
    p.add_argument("n", nargs="+", help="values of N (space or comma separated)")
    common(p, "csv")
    p.set_defaults(func=cmd_birge)

    p = sub.add_parser("apps", help="application-level bounds")
    asub = p.add_subparsers(dest="app", required=True)
    a = asub.add_parser("posterior")
    a.add_argument("--d", type=int, required=True)
    a.add_argument("--n", type=int)
    a.add_argument("--sigma", type=float, default=1.0)
    common(a)
    a = asub.add_parser("regret")
    a.add_argument("--N", type=int, required=True)
    a.add_argument("--s", type=int, required=True)
    a.add_argument("--T", type=int, required=True)
    a.add_argument("--simulate", action="store_true")
    a.add_argument("--strategy", choices=("uniform", "hedge"), default="hedge")
    a.add_argument("--trials", type=int, default=2000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--eta", type=float)
    common(a)
    a = asub.add_parser("cramer")
    a.add_argument("--theta", type=float, required=True)
    a.add_argument("--x", type=float, required=True)
    a.add_argument("--n", type=int, required=True)
    common(a)
    a = asub.add_parser("dd")
    a.add_argument("--psi")
    a.add_argument("--epsilon", type=float)
    a.add_argument("--sigma", type=float)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--c", type=float, required=True)
    common(a)
    p.set_defaults(func=cmd_apps)

    p = sub.add_parser("verify", help="run the oracle suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", choices=("quick", "full"), default="quick")
    p.add_argument("--format", choices=("csv", "json-lines", "plain"), default="json-lines")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InputError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
