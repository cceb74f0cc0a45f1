"""Bernoulli reductions of weighted families and the Fano-type bounds built on them.

A family is a list of ``FamilyEntry`` records (weight, E_P[Z], E_Q[Z], Div(P, Q)).
``reduce`` averages them into a ``ReducedPair``; the ``fano_*`` functions
turn a reduced pair into an upper bound on the averaged p.  Continuous
parameter spaces are handled by passing quadrature weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kl_bounds
from .divergences import ConvexGenerator, FiniteDist, divergence_finite
from .errors import BadWeights, DegenerateLoss, DegenerateQBar, InvalidDistribution, OutOfRange, ZeroWeight
from .extreal import INF, ExtReal, ext, ext_sum

WEIGHT_TOL = 1e-12

QBAR_PRECONDITION = "0 < (1/N) sum_i Q_i(A_i) < 1"


@dataclass(frozen=True)
class FamilyEntry:
    weight: float
    p_exp: float
    q_exp: float
    div: ExtReal

    def __post_init__(self):
        if not (self.weight >= 0):
            raise BadWeights(f"weight must be non-negative, got {self.weight!r}")
        for name in ("p_exp", "q_exp"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise OutOfRange(f"{name}={v!r} outside [0, 1]")
        object.__setattr__(self, "div", ext(self.div))


@dataclass(frozen=True)
class ReducedPair:
    p_bar: float
    q_bar: float
    d_bar: ExtReal

    def __post_init__(self):
        object.__setattr__(self, "d_bar", ext(self.d_bar))


@dataclass(frozen=True)
class FanoReport:
    reduced: ReducedPair
    family: str
    value: float
    direction: str = "upper_on_p"

    @property
    def vacuous(self) -> bool:
        return self.direction == "upper_on_p" and self.value >= 1.0


def _weighted_mean(xs: Sequence[float], weights: Sequence[float], total: float) -> float:
    # anchored at the minimum so equal inputs average exactly
    m = min(xs)
    return m + math.fsum(w * (x - m) for w, x in zip(weights, xs)) / total


def reduce(entries: Sequence[FamilyEntry]) -> ReducedPair:
    if not entries:
        raise BadWeights("family is empty")
    weights = [e.weight for e in entries]
    total = math.fsum(weights)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise BadWeights(f"weights sum to {total!r}, not 1")
    p_bar = _weighted_mean([e.p_exp for e in entries], weights, total)
    q_bar = _weighted_mean([e.q_exp for e in entries], weights, total)
    d_bar = ext_sum([e.div for e in entries], weights) / total
    return ReducedPair(min(1.0, max(0.0, p_bar)), min(1.0, max(0.0, q_bar)), d_bar)


def uniform_family(p_exps: Sequence[float], q_exps: Sequence[float], divs: Sequence) -> list[FamilyEntry]:
    n = len(p_exps)
    return [FamilyEntry(1.0 / n, p, q, d) for p, q, d in zip(p_exps, q_exps, divs)]


def _open_qbar(reduced: ReducedPair) -> None:
    if not (0.0 < reduced.q_bar < 1.0):
        raise DegenerateQBar(f"bound requires {QBAR_PRECONDITION}; got q_bar={reduced.q_bar!r}")


_KL_SOLVERS = {
    "classic": kl_bounds.lb_classic,
    "refined": kl_bounds.lb_refined,
    "affine": kl_bounds.lb_affine,
}


def fano_kl(reduced: ReducedPair, variant: str = "classic") -> FanoReport:
    """(d_bar + ln 2) / ln(1/q_bar) and its ln(2 - q) and affine refinements."""
    _open_qbar(reduced)
    try:
        solver = _KL_SOLVERS[variant]
    except KeyError:
        raise OutOfRange(f"unknown kl variant {variant!r}; expected one of {sorted(_KL_SOLVERS)}") from None
    solved = solver(reduced.d_bar, reduced.q_bar)
    return FanoReport(reduced, f"kl_{variant}", solved.bound_on_p)


def fano_kl_sqrt(reduced: ReducedPair, use_max_denominator: bool = False) -> FanoReport:
    """q_bar + sqrt(d_bar / -ln q_bar), or with max{-ln q_bar, 2} in the denominator."""
    _open_qbar(reduced)
    solved = kl_bounds.lb_pinsker_fano(reduced.d_bar, reduced.q_bar, max_denominator=use_max_denominator)
    return FanoReport(reduced, "kl_sqrt_max" if use_max_denominator else "kl_sqrt", solved.bound_on_p)


def fano_kl_inverse(reduced: ReducedPair) -> FanoReport:
    """The sharpest solved form: sup{p : kl(p, q_bar) <= d_bar}."""
    _open_qbar(reduced)
    return FanoReport(reduced, "kl_inverse", kl_bounds.kl_inverse(reduced.q_bar, reduced.d_bar))


def fano_chi2(reduced: ReducedPair) -> FanoReport:
    _open_qbar(reduced)
    return FanoReport(reduced, "chi2", kl_bounds.chi2_solved(reduced.d_bar, reduced.q_bar).bound_on_p)


def fano_hellinger(reduced: ReducedPair, sharp: bool = False) -> FanoReport:
    _open_qbar(reduced)
    if reduced.d_bar > 2.0:
        raise OutOfRange(f"average squared Hellinger distance must be <= 2, got {reduced.d_bar}")
    solved = kl_bounds.lecam_hellinger(float(reduced.d_bar), reduced.q_bar, sharp=sharp)
    return FanoReport(reduced, solved.family, solved.bound_on_p)


def all_reports(reduced: ReducedPair, f: ConvexGenerator = ConvexGenerator.KL) -> list[FanoReport]:
    """Every applicable bound family for the given generator."""
    if f is ConvexGenerator.KL:
        return [
            fano_kl(reduced, "classic"),
            fano_kl(reduced, "refined"),
            fano_kl(reduced, "affine"),
            fano_kl_sqrt(reduced, use_max_denominator=False),
            fano_kl_sqrt(reduced, use_max_denominator=True),
            fano_kl_inverse(reduced),
        ]
    if f is ConvexGenerator.CHI2:
        return [fano_chi2(reduced)]
    return [fano_hellinger(reduced, sharp=False), fano_hellinger(reduced, sharp=True)]


def haroutunian_q_lower(p_exp: float, kl_val) -> float:
    """E_Q[Z] >= exp(-(KL(P, Q) + ln 2) / E_P[Z]); 0 when E_P[Z] = 0 or KL is infinite."""
    if not (0.0 <= p_exp <= 1.0):
        raise OutOfRange(f"p_exp={p_exp!r} outside [0, 1]")
    kl_val = ext(kl_val)
    if p_exp == 0.0 or kl_val.infinite:
        return 0.0
    return math.exp(-(kl_val.value + math.log(2.0)) / p_exp)


@dataclass(frozen=True)
class BayesRiskBound:
    value: float
    loss_star: float
    zero_loss: bool = False


def bayes_risk_lower(prior: FiniteDist, loss, kl_to_mixture: Sequence) -> BayesRiskBound:
    """Lower bound on the Bayes risk with a [0, 1]-valued loss.

    ``loss`` is a |Theta| x |A| matrix, ``kl_to_mixture[t]`` is
    KL(P_t, sum_s prior_s P_s), which attains the infimum over alternatives.
    """
    nu = prior.as_array()
    L = np.asarray(loss, dtype=float)
    if L.ndim != 2 or L.shape[0] != len(nu):
        raise OutOfRange(f"loss matrix must have one row per parameter ({len(nu)}), got shape {L.shape}")
    if np.any(L < 0) or np.any(L > 1) or np.any(np.isnan(L)):
        raise OutOfRange("loss entries must lie in [0, 1]")
    if len(kl_to_mixture) != len(nu):
        raise OutOfRange("need one KL value per parameter")
    loss_star = float(np.min(nu @ L))
    if loss_star >= 1.0:
        raise DegenerateLoss("inf_a sum_t nu_t L(t, a) = 1: ln(1 - loss) is -inf")
    if loss_star <= 0.0:
        return BayesRiskBound(0.0, 0.0, zero_loss=True)
    k_avg = ext_sum(kl_to_mixture, list(nu))
    if k_avg.infinite:
        return BayesRiskBound(0.0, loss_star)
    val = 1.0 + (k_avg.value + math.log1p(loss_star)) / math.log1p(-loss_star)
    return BayesRiskBound(min(1.0, max(0.0, val)), loss_star)


@dataclass(frozen=True)
class ConstantAlternative:
    mixture: FiniteDist
    avg_div: ExtReal
    cap: ExtReal


def divergence_cap(f: ConvexGenerator, alpha: FiniteDist) -> ExtReal:
    """max_j Div_f(delta_j, alpha) in closed form."""
    a_min = min(alpha.weights)
    if a_min <= 0:
        raise ZeroWeight("all mixture weights must be positive")
    if f is ConvexGenerator.KL:
        return ExtReal(math.log(1.0 / a_min))
    if f is ConvexGenerator.CHI2:
        return ExtReal(1.0 / a_min - 1.0)
    return ExtReal(2.0 - 2.0 * math.sqrt(a_min))


def best_constant_alternative(f: ConvexGenerator, dists: Sequence[FiniteDist], alpha: FiniteDist) -> ConstantAlternative:
    if len(dists) != len(alpha):
        raise InvalidDistribution("need one mixture weight per distribution")
    if min(alpha.weights) <= 0:
        raise ZeroWeight("all mixture weights must be positive")
    k = len(dists[0])
    mixture = FiniteDist(tuple(math.fsum(a * d.weights[j] for a, d in zip(alpha.weights, dists)) for j in range(k)))
    avg = ext_sum([divergence_finite(f, d, mixture) for d in dists], alpha.weights)
    return ConstantAlternative(mixture, avg, divergence_cap(f, alpha))


def renyi_infty(prior: FiniteDist) -> float:
    """H_inf(nu) = -ln max_t nu_t."""
    return -math.log(max(prior.weights))
