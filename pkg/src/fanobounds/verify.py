"""Brute-force oracle harness.

Every inequality the package relies on gets a check: a function that draws
random instances (or walks a dense grid), evaluates both sides with the
library code and returns the largest violation seen.  ``run_suite`` executes
the registry in a fixed order with per-check generators derived from
(seed, check name), so a report is a pure function of its seed and budget.
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import applications as apps
from . import birge, fano, kl_bounds
from .divergences import (
    ConvexGenerator,
    FiniteDist,
    chi2_bernoulli_array,
    divergence_finite,
    hellinger2_bernoulli,
    hellinger2_bernoulli_array,
    kl_bernoulli,
    kl_bernoulli_array,
)
from .extreal import ExtReal, ext

GENERATORS = (ConvexGenerator.KL, ConvexGenerator.CHI2, ConvexGenerator.HELLINGER)

TOL_EXACT = 1e-10
TOL_CLOSED = 1e-12

BUDGETS = {
    "quick": {"cases": 1_000, "grid": 400, "mc_trials": 200, "dims": 10},
    "full": {"cases": 100_000, "grid": 2_000, "mc_trials": 2_000, "dims": 50},
}


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    cases_run: int
    max_violation: float
    passed: bool
    seed: int
    tolerance: float = TOL_EXACT
    module: str = ""

    def to_json(self) -> str:
        rec = asdict(self)
        rec["max_violation"] = _render(self.max_violation)
        rec["tolerance"] = _render(self.tolerance)
        return json.dumps(rec, sort_keys=False, separators=(",", ":"))


def _render(x: float):
    return "inf" if math.isinf(x) else x


@dataclass(frozen=True)
class Check:
    name: str
    module: str
    claim: str
    tolerance: float
    fn: Callable[[np.random.Generator, dict], tuple[int, float]]


# --- helpers ------------------------------------------------------------------


def random_dist(k: int, rng: np.random.Generator, zero_prob: float = 0.2) -> FiniteDist:
    """Uniform draw from the simplex; with probability ``zero_prob`` some atoms are zeroed."""
    if k < 1:
        raise ValueError("need at least one atom")
    w = rng.exponential(size=k)
    if k > 1 and rng.random() < zero_prob:
        drop = rng.random(k) < 0.5
        if drop.all():
            drop[rng.integers(k)] = False
        w[drop] = 0.0
    return FiniteDist(tuple(w / math.fsum(w)))


def _excess(lhs, rhs) -> float:
    """How much lhs exceeds rhs, relative once rhs is above 1."""
    lhs, rhs = ext(lhs), ext(rhs)
    if rhs.infinite:
        return 0.0
    if lhs.infinite:
        return math.inf
    return (lhs.value - rhs.value) / max(1.0, rhs.value)


def _push(d: FiniteDist, mapping, m: int) -> FiniteDist:
    return d.push(list(int(j) for j in mapping), m)


def _random_k(rng, lo: int = 1, hi: int = 8) -> int:
    return int(rng.integers(lo, hi + 1))


def _bern_div(f: ConvexGenerator, p: float, q: float) -> ExtReal:
    return f.bernoulli(p, q)


# --- divergences --------------------------------------------------------------


def _dpi(f):
    def check(rng, b):
        worst = 0.0
        for _ in range(b["cases"]):
            k, m = _random_k(rng), _random_k(rng, 1, 4)
            p, q = random_dist(k, rng), random_dist(k, rng)
            mapping = rng.integers(0, m, size=k)
            lhs = divergence_finite(f, _push(p, mapping, m), _push(q, mapping, m))
            worst = max(worst, _excess(lhs, divergence_finite(f, p, q)))
        return b["cases"], worst

    return check


def _rv_dpi(f):
    def check(rng, b):
        worst = 0.0
        for _ in range(b["cases"]):
            k = _random_k(rng)
            p, q = random_dist(k, rng), random_dist(k, rng)
            x = rng.random(k)
            lhs = _bern_div(f, p.expect(x), q.expect(x))
            worst = max(worst, _excess(lhs, divergence_finite(f, p, q)))
        return b["cases"], worst

    return check


def _joint_convexity(f):
    def check(rng, b):
        worst = 0.0
        for _ in range(b["cases"]):
            k = _random_k(rng)
            p1, p2, q1, q2 = (random_dist(k, rng) for _ in range(4))
            lam = float(rng.random())
            lhs = divergence_finite(f, p1.mix(p2, lam), q1.mix(q2, lam))
            rhs = divergence_finite(f, p1, q1) * (1 - lam) + divergence_finite(f, p2, q2) * lam
            worst = max(worst, _excess(lhs, rhs))
        return b["cases"], worst

    return check


def _nonnegativity(rng, b):
    worst = 0.0
    for _ in range(b["cases"]):
        k = _random_k(rng)
        p, q = random_dist(k, rng), random_dist(k, rng)
        for f in GENERATORS:
            d = divergence_finite(f, p, q)
            if not d.infinite:
                worst = max(worst, -d.value)
            worst = max(worst, float(divergence_finite(f, p, p)))
    return b["cases"], worst


def _bernoulli_agreement(rng, b):
    worst = 0.0
    for _ in range(b["cases"]):
        p, q = (float(x) for x in rng.random(2))
        if rng.random() < 0.1:
            q = float(rng.integers(0, 2))
        for f in GENERATORS:
            full = divergence_finite(f, FiniteDist((p, 1 - p)), FiniteDist((q, 1 - q)))
            closed = f.bernoulli(p, q)
            if full.infinite or closed.infinite:
                worst = max(worst, 0.0 if full.infinite == closed.infinite else math.inf)
            else:
                worst = max(worst, abs(full.value - closed.value) / max(1.0, closed.value))
    return b["cases"], worst


def _singular_part(rng, b):
    """Singular mass is charged M_f: KL and chi2 blow up, Hellinger stays 2 - 2 sum sqrt(pq)."""
    worst = 0.0
    for _ in range(b["cases"]):
        k = _random_k(rng, 2, 8)
        p, q = random_dist(k, rng, zero_prob=1.0), random_dist(k, rng, zero_prob=1.0)
        pa, qa = p.as_array(), q.as_array()
        singular = float(pa[qa == 0].sum()) > 0
        h = float(divergence_finite(ConvexGenerator.HELLINGER, p, q))
        worst = max(worst, abs(h - (2.0 - 2.0 * math.fsum(np.sqrt(pa * qa)))))
        for f in (ConvexGenerator.KL, ConvexGenerator.CHI2):
            if divergence_finite(f, p, q).infinite != singular:
                worst = math.inf
    return b["cases"], worst


# --- kl_bounds grids ----------------------------------------------------------


def _grid(n: int):
    pts = np.arange(1, n + 1, dtype=float) / (n + 1)
    return pts[:, None], pts[None, :]


def scalar_grid_violations(n: int) -> dict[str, float]:
    """Worst violation of each scalar bound over an n x n interior grid of (p, q)."""
    p, q = _grid(n)
    kl = kl_bernoulli_array(p, q)
    out = {}
    out["classic"] = np.max(p - kl_bounds.lb_classic_array(kl, q))
    out["refined"] = np.max(p - kl_bounds.lb_refined_array(kl, q))
    out["affine"] = np.max(p - kl_bounds.lb_affine_array(kl, q))
    out["pinsker_fano"] = np.max(p - kl_bounds.lb_pinsker_fano_array(kl, q, True))
    out["pinsker_fano_plain"] = np.max(p - kl_bounds.lb_pinsker_fano_array(kl, q, False))
    out["chi2"] = np.max(p - kl_bounds.chi2_solved_array(chi2_bernoulli_array(p, q), q))
    h2 = hellinger2_bernoulli_array(p, q)
    out["lecam"] = np.max(p - kl_bounds.lecam_hellinger_array(h2, q, False))
    out["lecam_sharp"] = np.max(p - kl_bounds.lecam_hellinger_array(h2, q, True))
    out["refined_pinsker"] = np.max(kl_bounds.pinsker_factor_array(q) * (p - q) ** 2 - kl)
    out["bretagnolle_huber"] = np.max(kl_bounds.bh_constant() * np.exp(-kl) - (1.0 - np.abs(p - q)))
    return {k: max(0.0, float(v)) for k, v in out.items()}


def _grid_check(key: str):
    def check(rng, b):
        n = b["grid"]
        return n * n, scalar_grid_violations(n)[key]

    return check


def _affine_dominates(rng, b):
    """ln(2 - q) / ln(1/q) <= 0.21 + 0.79 q on (0, 1)."""
    q = np.arange(1, b["grid"] * 10 + 1) / (b["grid"] * 10 + 1)
    v = np.log(2.0 - q) / np.log(1.0 / q) - (kl_bounds.AFFINE_INTERCEPT + kl_bounds.AFFINE_SLOPE * q)
    return q.size, max(0.0, float(v.max()))


def _solver_ordering(rng, b):
    """kl_inverse is the tightest solved form; the ln(2 - q) slack beats ln 2."""
    worst = 0.0
    for _ in range(b["cases"]):
        q = float(rng.uniform(1e-6, 1 - 1e-6))
        y = float(rng.exponential())
        inv = kl_bounds.kl_inverse(q, y)
        for solver in (kl_bounds.lb_classic, kl_bounds.lb_refined, kl_bounds.lb_affine, kl_bounds.lb_pinsker_fano):
            worst = max(worst, inv - solver(y, q).bound_on_p)
        worst = max(worst, kl_bounds.lb_refined(y, q).bound_on_p - kl_bounds.lb_classic(y, q).bound_on_p)
    return b["cases"], max(0.0, worst)


def _kl_inverse_roundtrip(rng, b):
    worst = 0.0
    for _ in range(b["cases"]):
        q = float(10 ** rng.uniform(-6, math.log10(0.999)))
        y = float(10 ** rng.uniform(-6, 1))
        p = kl_bounds.kl_inverse(q, y)
        if p < 1.0:
            worst = max(worst, abs(float(kl_bernoulli(p, q)) - y))
        else:
            worst = max(worst, math.log(1.0 / q) - y)
    return b["cases"], max(0.0, worst)


def _pinsker_witness(rng, b):
    """phi(q) is attained: kl(1 - q, q) / (1 - 2q)^2 = phi(q)."""
    worst = 0.0
    for _ in range(b["cases"]):
        q = float(rng.uniform(1e-4, 1 - 1e-4))
        if abs(q - 0.5) < 1e-3:
            continue
        ratio = float(kl_bernoulli(1 - q, q)) / (1 - 2 * q) ** 2
        phi = float(kl_bounds.pinsker_factor(q))
        worst = max(worst, abs(ratio - phi) / phi)
    return b["cases"], worst


def _closed_forms(rng, b):
    """kl(p, 1/2) = ln 2 - h(p) and the scalar/array twins agree."""
    worst = 0.0
    ps = rng.random(b["cases"])
    qs = rng.random(b["cases"])
    for p, q in zip(ps, qs):
        p, q = float(p), float(q)
        worst = max(worst, abs(float(kl_bernoulli(p, 0.5)) - (math.log(2.0) - kl_bounds.binary_entropy(p))))
        worst = max(worst, abs(float(kl_bernoulli(p, q)) - float(kl_bernoulli_array(p, q))))
        worst = max(worst, abs(hellinger2_bernoulli(p, q) - float(hellinger2_bernoulli_array(p, q))))
        phi = float(kl_bounds.pinsker_factor(q))
        worst = max(worst, abs(phi - float(kl_bounds.pinsker_factor_array(q))) / max(1.0, phi))
    return b["cases"], worst


# --- fano ---------------------------------------------------------------------


def _random_family(rng, f, indicators: bool):
    m, k = _random_k(rng, 1, 6), _random_k(rng, 1, 6)
    alpha = random_dist(m, rng, zero_prob=0.0)
    ps = [random_dist(k, rng) for _ in range(m)]
    qs = [random_dist(k, rng) for _ in range(m)]
    if indicators:
        zs = [(rng.random(k) < 0.5).astype(float) for _ in range(m)]
    else:
        zs = [rng.random(k) for _ in range(m)]
    entries = [
        fano.FamilyEntry(a, p.expect(z), q.expect(z), divergence_finite(f, p, q))
        for a, p, q, z in zip(alpha.weights, ps, qs, zs)
    ]
    return entries


def _reduction_chain(f, indicators: bool):
    def check(rng, b):
        worst = 0.0
        for _ in range(b["cases"]):
            entries = _random_family(rng, f, indicators)
            red = fano.reduce(entries)
            mid = ExtReal(0.0)
            for e in entries:
                mid = mid + _bern_div(f, e.p_exp, e.q_exp) * e.weight
            worst = max(worst, _excess(_bern_div(f, red.p_bar, red.q_bar), mid), _excess(mid, red.d_bar))
        return b["cases"], worst

    return check


def _report_soundness(rng, b):
    worst = 0.0
    for _ in range(b["cases"]):
        for f in GENERATORS:
            red = fano.reduce(_random_family(rng, f, indicators=False))
            if not (0.0 < red.q_bar < 1.0):
                continue
            for rep in fano.all_reports(red, f):
                worst = max(worst, red.p_bar - rep.value)
    return b["cases"], worst


def _compensation(rng, b):
    """sum a_j KL(P_j, Q) = sum a_j KL(P_j, mix) + KL(mix, Q)."""
    worst = 0.0
    kl = ConvexGenerator.KL
    for _ in range(b["cases"]):
        m, k = _random_k(rng, 1, 5), _random_k(rng, 1, 6)
        alpha = random_dist(m, rng, zero_prob=0.0)
        dists = [random_dist(k, rng) for _ in range(m)]
        q = random_dist(k, rng, zero_prob=0.0)
        alt = fano.best_constant_alternative(kl, dists, alpha)
        lhs = fano.ext_sum([divergence_finite(kl, d, q) for d in dists], alpha.weights)
        rhs = alt.avg_div + divergence_finite(kl, alt.mixture, q)
        worst = max(worst, abs(float(lhs) - float(rhs)) / max(1.0, float(rhs)))
    return b["cases"], worst


def _cap(rng, b):
    worst = 0.0
    for _ in range(b["cases"]):
        m, k = _random_k(rng, 1, 5), _random_k(rng, 1, 6)
        alpha = random_dist(m, rng, zero_prob=0.0)
        dists = [random_dist(k, rng) for _ in range(m)]
        for f in GENERATORS:
            alt = fano.best_constant_alternative(f, dists, alpha)
            worst = max(worst, _excess(alt.avg_div, alt.cap))
    return b["cases"], worst


def _random_partition_family(rng, n_hyp: int):
    k = _random_k(rng, n_hyp, n_hyp + 6)
    labels = rng.permutation(np.concatenate([np.arange(n_hyp), rng.integers(0, n_hyp, size=k - n_hyp)]))
    dists = [random_dist(k, rng) for _ in range(n_hyp)]
    hits = [d.prob(list(labels == i)) for i, d in enumerate(dists)]
    return dists, labels, hits


def _partition_ordering(rng, b):
    """min_i P_i(A_i) <= mean_i P_i(A_i) <= kl-inverse bound with the mixture as alternative."""
    worst = 0.0
    kl = ConvexGenerator.KL
    for _ in range(b["cases"]):
        n = _random_k(rng, 2, 5)
        dists, labels, hits = _random_partition_family(rng, n)
        alpha = FiniteDist((1.0 / n,) * n)
        alt = fano.best_constant_alternative(kl, dists, alpha)
        entries = [
            fano.FamilyEntry(1.0 / n, h, alt.mixture.prob(list(labels == i)), divergence_finite(kl, d, alt.mixture))
            for i, (d, h) in enumerate(zip(dists, hits))
        ]
        red = fano.reduce(entries)
        worst = max(worst, min(hits) - red.p_bar, abs(red.q_bar - 1.0 / n))
        worst = max(worst, red.p_bar - fano.fano_kl_inverse(red).value)
    return b["cases"], worst


def _haroutunian(rng, b):
    worst = 0.0
    for _ in range(b["cases"]):
        k = _random_k(rng)
        p, q = random_dist(k, rng), random_dist(k, rng)
        z = rng.random(k)
        lower = fano.haroutunian_q_lower(p.expect(z), divergence_finite(ConvexGenerator.KL, p, q))
        worst = max(worst, lower - q.expect(z))
    return b["cases"], max(0.0, worst)


def _bayes_risk(rng, b):
    """The Bayes-risk lower bound never exceeds the exact Bayes risk."""
    worst = 0.0
    kl = ConvexGenerator.KL
    for _ in range(b["cases"]):
        n_t, n_a, k = _random_k(rng, 1, 5), _random_k(rng, 1, 4), _random_k(rng, 1, 6)
        prior = random_dist(n_t, rng, zero_prob=0.0)
        dists = [random_dist(k, rng) for _ in range(n_t)]
        loss = rng.random((n_t, n_a))
        loss[rng.random(loss.shape) < 0.2] = 0.0
        nu = prior.as_array()
        joint = nu[:, None] * np.array([d.as_array() for d in dists])  # (t, x)
        exact = float(np.sum(np.min(joint.T @ loss, axis=1)))
        alt = fano.best_constant_alternative(kl, dists, prior)
        kls = [divergence_finite(kl, d, alt.mixture) for d in dists]
        try:
            bound = fano.bayes_risk_lower(prior, loss, kls)
        except fano.DegenerateLoss:
            continue
        worst = max(worst, bound.value - exact)
    return b["cases"], max(0.0, worst)


# --- birge --------------------------------------------------------------------

BIRGE_NS = (2, 3, 4, 5, 7, 10, 20, 50, 100, 1000, 10**6)


def _birge_residuals(rng, b):
    worst = 0.0
    for n in BIRGE_NS:
        c = birge.birge_c(n)
        worst = max(worst, abs(birge.birge_g(c) - math.log1p(-1.0 / n)))
        d = birge.birge_d(n)
        worst = max(worst, birge.birge_r(n, d), 0.0)
        worst = max(worst, -birge.birge_r(n, min(d + 1e-8, 1 - 1e-12)))
    return len(BIRGE_NS), max(0.0, worst)


def _birge_maximality(rng, b):
    """r_N stays positive on (d_N, 1)."""
    worst = 0.0
    for n in BIRGE_NS:
        d = birge.birge_d(n)
        grid = np.linspace(d + 1e-6, 1 - 1e-9, b["grid"])
        r = kl_bernoulli_array(grid, (1 - grid) / (n - 1)) - grid * math.log(n)
        worst = max(worst, float(-r.min()))
    return len(BIRGE_NS) * b["grid"], max(0.0, worst)


def _birge_monotone(rng, b):
    worst = 0.0
    cs = [birge.birge_c(n) for n in BIRGE_NS]
    ds = [birge.birge_d(n) for n in BIRGE_NS]
    for seq in (cs, ds):
        for a, c in zip(seq, seq[1:]):
            worst = max(worst, c - a)
    for c, d in zip(cs, ds):
        worst = max(worst, d - c - 1e-9, c - birge.MASSART)
    return len(BIRGE_NS), max(0.0, worst)


def _birge_soundness(rng, b):
    worst = 0.0
    kl = ConvexGenerator.KL
    for _ in range(b["cases"]):
        n = _random_k(rng, 2, 6)
        dists, labels, hits = _random_partition_family(rng, n)
        k_bar = fano.ext_sum([divergence_finite(kl, d, dists[0]) for d in dists[1:]]) / (n - 1)
        lhs = min(hits)
        for variant in ("cn", "dn", "massart"):
            worst = max(worst, lhs - birge.birge_bound(n, k_bar, variant))
    return b["cases"], max(0.0, worst)


# --- applications -------------------------------------------------------------

SPARSE_SMALL = ((2, 1), (2, 2), (3, 1), (3, 2), (4, 2), (5, 3), (6, 2), (8, 3))


def _sparse_chain(rng, b):
    worst = 0.0
    cases = 0
    for n, s in SPARSE_SMALL:
        for frac in (0.1, 0.5, 0.95):
            eps = frac * s / (2 * n)
            t = int(rng.integers(1, 2000))
            ch = apps.sparse_chain(n, s, t, eps)
            cases += 1
            worst = max(worst, max(ch.kl_exact) - min(ch.kl_exact))
            worst = max(worst, max(ch.kl_exact) - ch.kl_bound, ch.kl_bound - ch.kl_quadratic)
            worst = max(worst, abs(ch.fano_value - min(1.0, ch.chain_rhs)))
            worst = max(worst, ch.regret_displayed - ch.regret_from_fano)
    return cases, max(0.0, worst)


def _sparse_marginals(rng, b):
    worst = 0.0
    cases = 0
    for n, s in SPARSE_SMALL:
        eps = 0.3 * s / (2 * n)
        family, base = apps.build_sparse_env(n, s, eps)
        for i, env in enumerate(family):
            for k in range(n):
                want = s / (2 * n) - (eps if k == i else 0.0)
                worst = max(worst, abs(env.marginal(k) - want))
                cases += 1
            worst = max(worst, abs(math.fsum(env.weights) - 1.0))
    return cases, worst


def _kl_quadratic(rng, b):
    worst = 0.0
    for _ in range(b["cases"]):
        p = float(rng.uniform(1e-3, 1 - 1e-3))
        eps = float(rng.uniform(0, p))
        if eps <= 0:
            continue
        lhs, rhs = apps.kl_quadratic_check(p, eps)
        worst = max(worst, lhs - rhs)
    return b["cases"], max(0.0, worst)


CRAMER_CASES = ((0.5, 0.75), (0.3, 0.5), (0.1, 0.4), (0.2, 0.9), (0.6, 0.61))


def _chernoff_sandwich(rng, b):
    worst = 0.0
    cases = 0
    ns = (1, 2, 5, 10, 100, 1000, 10**4) + ((10**5,) if b["grid"] >= 2000 else ())
    for theta, x in CRAMER_CASES:
        for n in ns:
            r = apps.cramer_rate(theta, x, n)
            cases += 1
            worst = max(worst, r.empirical_rate - r.limit_rate)
            if n >= 100:
                # the gap closes at rate ln(n)/n with a modest constant
                worst = max(worst, (r.limit_rate - r.empirical_rate) - 10 * math.log(n) / n)
    return cases, max(0.0, worst)


def _cramer_fano(rng, b):
    worst = 0.0
    cases = 0
    for theta, x in CRAMER_CASES:
        for n in (10, 100, 1000):
            for eps in (0.01, 0.05):
                if x + eps >= 1:
                    continue
                exact = apps.log_binomial_tail(theta, n, apps.strict_tail_start(x, n))
                lower = apps.cramer_fano_lower(theta, x, n, eps)
                worst = max(worst, lower - exact)
                cases += 1
    return cases, max(0.0, worst)


def _posterior_monotone(rng, b):
    worst = 0.0
    vals = [apps.posterior_constant(d)[0] for d in range(1, b["dims"] + 1)]
    for a, c in zip(vals, vals[1:]):
        worst = max(worst, c - a)
    floor = math.sqrt(math.e) / 8.0
    worst = max(worst, floor - 1e-6 - min(vals))
    return len(vals), max(0.0, worst)


def _dd_monotone(rng, b):
    worst = 0.0
    for _ in range(b["cases"]):
        psi = float(rng.exponential(0.1))
        n = int(rng.integers(1, 100))
        c = 1.0 + float(rng.exponential())
        base = apps.posterior_dd_bound(psi, n, c)
        worst = max(worst, apps.posterior_dd_bound(psi * 1.1, n, c) - base)
        worst = max(worst, apps.posterior_dd_bound(psi, n + 1, c) - base)
        worst = max(worst, apps.posterior_dd_bound(psi, n, c + 0.1) - base)
        worst = max(worst, base - 0.5)
    return b["cases"], max(0.0, worst)


def _mc_regret(rng, b):
    """Monte Carlo regret stays above the lower bound (within 3 standard errors)."""
    worst = -math.inf
    cases = 0
    for strategy in ("uniform", "hedge"):
        res = apps.mc_regret_experiment(4, 2, 64, strategy=strategy, trials=b["mc_trials"], seed=int(rng.integers(2**31)))
        cases += res.trials
        worst = max(worst, res.theoretical_floor - 3 * res.stderr - res.avg_mixture_regret)
    return cases, max(0.0, worst)


# --- registry -----------------------------------------------------------------


def _registry() -> list[Check]:
    checks = []
    for f in GENERATORS:
        v = f.value
        checks.append(Check(f"dpi_{v}", "divergences", "divergence shrinks under a deterministic map", 1e-12, _dpi(f)))
        checks.append(Check(f"rv_dpi_{v}", "divergences", "Bernoulli divergence of expectations is below the full divergence", 1e-12, _rv_dpi(f)))
        checks.append(Check(f"joint_convexity_{v}", "divergences", "divergence is jointly convex", 1e-12, _joint_convexity(f)))
    checks += [
        Check("nonnegativity", "divergences", "divergences are >= 0 and vanish on equal inputs", 1e-12, _nonnegativity),
        Check("bernoulli_agreement", "divergences", "two-atom divergence equals the Bernoulli closed form", 1e-12, _bernoulli_agreement),
        Check("singular_part", "divergences", "singular mass is charged at the maximal slope", 1e-12, _singular_part),
    ]
    grid_claims = {
        "classic": "p <= (kl + ln 2) / ln(1/q)",
        "refined": "p <= (kl + ln(2 - q)) / ln(1/q)",
        "affine": "p <= 0.21 + 0.79 q + kl / ln(1/q)",
        "pinsker_fano": "p <= q + sqrt(kl / max(ln(1/q), 2))",
        "pinsker_fano_plain": "p <= q + sqrt(kl / ln(1/q))",
        "chi2": "p <= q + sqrt(q chi2)",
        "lecam": "p <= q + sqrt(h2 (1 - h2/4))",
        "lecam_sharp": "sharper Hellinger bound",
        "refined_pinsker": "kl >= phi(q) (p - q)^2",
        "bretagnolle_huber": "1 - |p - q| >= exp(-1/e) exp(-kl)",
    }
    for key, claim in grid_claims.items():
        checks.append(Check(f"grid_{key}", "kl_bounds", claim, TOL_EXACT, _grid_check(key)))
    checks += [
        Check("affine_dominates_refined", "kl_bounds", "ln(2 - q)/ln(1/q) <= 0.21 + 0.79 q", TOL_EXACT, _affine_dominates),
        Check("solver_ordering", "kl_bounds", "kl-inverse is the tightest solved form", TOL_EXACT, _solver_ordering),
        Check("kl_inverse_roundtrip", "kl_bounds", "kl(kl_inverse(q, y), q) = y", 1e-9, _kl_inverse_roundtrip),
        Check("pinsker_witness", "kl_bounds", "phi(q) is attained at p = 1 - q", 1e-10, _pinsker_witness),
        Check("closed_forms", "kl_bounds", "entropy, kl and phi closed forms agree", TOL_CLOSED, _closed_forms),
    ]
    for f in GENERATORS:
        v = f.value
        checks.append(Check(f"reduction_events_{v}", "fano", "Bernoulli reduction chain with events", 1e-12, _reduction_chain(f, True)))
        checks.append(Check(f"reduction_rv_{v}", "fano", "Bernoulli reduction chain with [0,1] variables", 1e-12, _reduction_chain(f, False)))
    checks += [
        Check("report_soundness", "fano", "every solved bound is >= the averaged p", TOL_EXACT, _report_soundness),
        Check("compensation", "fano", "the prior mixture is the best constant KL alternative", TOL_EXACT, _compensation),
        Check("divergence_cap", "fano", "average divergence to the mixture is below the cap", 1e-12, _cap),
        Check("partition_ordering", "fano", "min <= mean <= kl-inverse bound on a partition", TOL_EXACT, _partition_ordering),
        Check("haroutunian", "fano", "Q(Z) >= exp(-(KL + ln 2) / P(Z))", TOL_EXACT, _haroutunian),
        Check("bayes_risk", "fano", "Bayes-risk lower bound is below the exact Bayes risk", TOL_EXACT, _bayes_risk),
        Check("birge_residuals", "birge", "c_N and d_N solve their defining equations", 1e-8, _birge_residuals),
        Check("birge_maximality", "birge", "r_N > 0 beyond d_N", TOL_EXACT, _birge_maximality),
        Check("birge_monotone", "birge", "c_N, d_N decrease and sit below the Massart constant", TOL_EXACT, _birge_monotone),
        Check("birge_soundness", "birge", "min_i P_i(A_i) <= max(constant, K / ln N) on partitions", TOL_EXACT, _birge_soundness),
        Check("sparse_chain", "applications", "exact sparse-environment KL chain", TOL_EXACT, _sparse_chain),
        Check("sparse_marginals", "applications", "sparse-environment marginals", TOL_EXACT, _sparse_marginals),
        Check("kl_quadratic", "applications", "kl(p - eps, p) <= eps^2 / (p (1 - p))", TOL_EXACT, _kl_quadratic),
        Check("chernoff_sandwich", "applications", "Chernoff bound and ln(n)/n convergence", TOL_EXACT, _chernoff_sandwich),
        Check("cramer_fano", "applications", "change-of-measure lower bound on binomial tails", TOL_EXACT, _cramer_fano),
        Check("posterior_monotone", "applications", "c_d decreases towards sqrt(e)/8", TOL_EXACT, _posterior_monotone),
        Check("dd_monotone", "applications", "2^-c exp(-c n psi) decreases in psi, n and c", TOL_EXACT, _dd_monotone),
        Check("mc_regret", "applications", "simulated regret exceeds the lower bound", 0.0, _mc_regret),
    ]
    return checks


REGISTRY: list[Check] = _registry()


def check_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def run_check(check: Check, seed: int, budget: str = "quick") -> CheckReport:
    cases, viol = check.fn(check_rng(seed, check.name), BUDGETS[budget])
    viol = float(viol)
    return CheckReport(check.name, int(cases), viol, viol <= check.tolerance, seed, check.tolerance, check.module)


def run_suite(seed: int = 0, budget: str = "quick", names: list[str] | None = None) -> list[CheckReport]:
    if budget not in BUDGETS:
        raise ValueError(f"unknown budget {budget!r}; expected one of {sorted(BUDGETS)}")
    selected = REGISTRY if names is None else [c for c in REGISTRY if c.name in set(names)]
    return [run_check(c, seed, budget) for c in selected]


def to_json_lines(reports: list[CheckReport]) -> str:
    return "".join(r.to_json() + "\n" for r in reports)
