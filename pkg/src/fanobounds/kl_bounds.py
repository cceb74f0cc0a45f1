"""Lower bounds on Bernoulli divergences, solved as upper bounds on p.

Every solver takes a divergence value D >= div(p, q) and returns a number
that is >= p for every p compatible with D.  Results are clipped to [0, 1].
Scalar functions validate and return ``SolvedBound``; the ``*_array``
functions are their vectorised twins used by the grid checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import bisect_decreasing
from .divergences import kl_bernoulli
from .errors import DegenerateQ, OutOfRange
from .extreal import INF, ExtReal, ext

# additive slack in the classical bound; module-level so tests can corrupt it
CLASSIC_SLACK = math.log(2.0)
AFFINE_INTERCEPT = 0.21
AFFINE_SLOPE = 0.79
KL_INVERSE_TOL = 1e-12
KL_INVERSE_MAX_ITER = 200


def bh_constant() -> float:
    """e^{-1/e}, the improved Bretagnolle-Huber factor."""
    return math.exp(-1.0 / math.e)


@dataclass(frozen=True)
class SolvedBound:
    bound_on_p: float
    family: str

    def __post_init__(self):
        if not (0.0 <= self.bound_on_p <= 1.0):
            raise OutOfRange(f"solved bound {self.bound_on_p!r} outside [0, 1]")

    @property
    def vacuous(self) -> bool:
        return self.bound_on_p >= 1.0

    def __float__(self) -> float:
        return self.bound_on_p


def _clip(x: float) -> float:
    return min(1.0, max(0.0, x))


def _open_q(q: float) -> None:
    if not (0.0 < q < 1.0):
        raise DegenerateQ(f"q must lie in (0, 1), got {q!r}")


def _closed_q(q: float) -> None:
    if not (0.0 <= q <= 1.0):
        raise OutOfRange(f"q must lie in [0, 1], got {q!r}")


def lb_classic(kl_val, q: float) -> SolvedBound:
    """p <= (kl + ln 2) / ln(1/q)."""
    _open_q(q)
    kl_val = ext(kl_val)
    if kl_val.infinite:
        return SolvedBound(1.0, "classic")
    return SolvedBound(_clip((kl_val.value + CLASSIC_SLACK) / math.log(1.0 / q)), "classic")


def lb_refined(kl_val, q: float) -> SolvedBound:
    """p <= (kl + ln(2 - q)) / ln(1/q)."""
    _open_q(q)
    kl_val = ext(kl_val)
    if kl_val.infinite:
        return SolvedBound(1.0, "refined")
    return SolvedBound(_clip((kl_val.value + math.log(2.0 - q)) / math.log(1.0 / q)), "refined")


def lb_affine(kl_val, q: float) -> SolvedBound:
    """p <= 0.21 + 0.79 q + kl / ln(1/q)."""
    _open_q(q)
    kl_val = ext(kl_val)
    if kl_val.infinite:
        return SolvedBound(1.0, "affine")
    return SolvedBound(_clip(AFFINE_INTERCEPT + AFFINE_SLOPE * q + kl_val.value / math.log(1.0 / q)), "affine")


def pinsker_factor(q: float) -> ExtReal:
    """phi(q) = ln((1-q)/q) / (1-2q), with phi(1/2) = 2 and phi(0) = phi(1) = inf."""
    _closed_q(q)
    if q == 0.0 or q == 1.0:
        return INF
    if q == 0.5:
        return ExtReal(2.0)
    u = 1.0 - 2.0 * q
    # log1p form is exact near q = 1/2 but loses digits as u/q -> -1
    if 0.25 <= q <= 0.75:
        return ExtReal(math.log1p(u / q) / u)
    return ExtReal((math.log(1.0 - q) - math.log(q)) / u)


def lb_pinsker_fano(kl_val, q: float, max_denominator: bool = True) -> SolvedBound:
    """p <= q + sqrt(kl / max{ln(1/q), 2}); plain ln(1/q) with max_denominator=False."""
    _open_q(q)
    kl_val = ext(kl_val)
    family = "pinsker_fano" if max_denominator else "pinsker_fano_plain"
    if kl_val.infinite:
        return SolvedBound(1.0, family)
    den = math.log(1.0 / q)
    if max_denominator:
        den = max(den, 2.0)
    return SolvedBound(_clip(q + math.sqrt(kl_val.value / den)), family)


def bretagnolle_huber_q_lower(p_val: float, kl_val) -> float:
    """q >= p - 1 + e^{-1/e} e^{-kl}, floored at 0."""
    _closed_q(p_val)
    kl_val = ext(kl_val)
    tail = 0.0 if kl_val.infinite else bh_constant() * math.exp(-kl_val.value)
    return max(0.0, p_val - 1.0 + tail)


def lecam_hellinger(h2_val: float, q: float, sharp: bool = False) -> SolvedBound:
    if not (0.0 <= h2_val <= 2.0):
        raise OutOfRange(f"squared Hellinger distance must lie in [0, 2], got {h2_val!r}")
    _closed_q(q)
    root = math.sqrt(h2_val * (1.0 - h2_val / 4.0))
    if not sharp:
        return SolvedBound(_clip(q + root), "lecam")
    # the larger root below increases in h2 only up to h2(1, q) = 2 - 2 sqrt(q);
    # past that point every p is compatible with the budget
    if h2_val >= 2.0 - 2.0 * math.sqrt(q):
        return SolvedBound(1.0, "lecam_sharp")
    val = q + (1.0 - 2.0 * q) * h2_val * (1.0 - h2_val / 4.0) + 2.0 * math.sqrt(q * (1.0 - q)) * (1.0 - h2_val / 2.0) * root
    return SolvedBound(_clip(val), "lecam_sharp")


def chi2_solved(chi2_val, q: float) -> SolvedBound:
    """p <= q + sqrt(q chi2); an infinite chi2 always solves to 1."""
    _closed_q(q)
    chi2_val = ext(chi2_val)
    if chi2_val.infinite:
        return SolvedBound(1.0, "chi2")
    return SolvedBound(_clip(q + math.sqrt(q * chi2_val.value)), "chi2")


def kl_inverse(q: float, y) -> float:
    """sup{p in [0, 1] : kl(p, q) <= y}, by bisection on [q, 1]."""
    _open_q(q)
    y = ext(y)
    if y.infinite or y.value >= math.log(1.0 / q):
        return 1.0
    if y.value == 0.0:
        return q
    target = y.value
    lo, _ = bisect_decreasing(lambda p: target - float(kl_bernoulli(p, q)), q, 1.0, KL_INVERSE_TOL, KL_INVERSE_MAX_ITER)
    return lo


def binary_entropy(p: float) -> float:
    _closed_q(p)
    h = 0.0
    if 0.0 < p < 1.0:
        h = -(p * math.log(p) + (1.0 - p) * math.log1p(-p))
    return h


# --- vectorised twins ------------------------------------------------------


def _arr(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def lb_classic_array(kl_val, q) -> np.ndarray:
    kl_val, q = _arr(kl_val), _arr(q)
    with np.errstate(invalid="ignore"):
        return np.clip((kl_val + CLASSIC_SLACK) / np.log(1.0 / q), 0.0, 1.0)


def lb_refined_array(kl_val, q) -> np.ndarray:
    kl_val, q = _arr(kl_val), _arr(q)
    with np.errstate(invalid="ignore"):
        return np.clip((kl_val + np.log(2.0 - q)) / np.log(1.0 / q), 0.0, 1.0)


def lb_affine_array(kl_val, q) -> np.ndarray:
    kl_val, q = _arr(kl_val), _arr(q)
    with np.errstate(invalid="ignore"):
        return np.clip(AFFINE_INTERCEPT + AFFINE_SLOPE * q + kl_val / np.log(1.0 / q), 0.0, 1.0)


def pinsker_factor_array(q) -> np.ndarray:
    q = _arr(q)
    u = 1.0 - 2.0 * q
    with np.errstate(divide="ignore", invalid="ignore"):
        near = (q >= 0.25) & (q <= 0.75)
        phi = np.where(near, np.log1p(u / q), np.log(1.0 - q) - np.log(q)) / u
    phi = np.where(q == 0.5, 2.0, phi)
    return np.where((q == 0.0) | (q == 1.0), np.inf, phi)


def lb_pinsker_fano_array(kl_val, q, max_denominator: bool = True) -> np.ndarray:
    kl_val, q = _arr(kl_val), _arr(q)
    den = np.log(1.0 / q)
    if max_denominator:
        den = np.maximum(den, 2.0)
    with np.errstate(invalid="ignore"):
        return np.clip(q + np.sqrt(kl_val / den), 0.0, 1.0)


def bretagnolle_huber_q_lower_array(p_val, kl_val) -> np.ndarray:
    p_val, kl_val = _arr(p_val), _arr(kl_val)
    return np.maximum(0.0, p_val - 1.0 + bh_constant() * np.exp(-kl_val))


def lecam_hellinger_array(h2_val, q, sharp: bool = False) -> np.ndarray:
    h2_val, q = _arr(h2_val), _arr(q)
    root = np.sqrt(h2_val * (1.0 - h2_val / 4.0))
    if not sharp:
        return np.clip(q + root, 0.0, 1.0)
    val = q + (1.0 - 2.0 * q) * h2_val * (1.0 - h2_val / 4.0) + 2.0 * np.sqrt(q * (1.0 - q)) * (1.0 - h2_val / 2.0) * root
    return np.where(h2_val >= 2.0 - 2.0 * np.sqrt(q), 1.0, np.clip(val, 0.0, 1.0))


def chi2_solved_array(chi2_val, q) -> np.ndarray:
    chi2_val, q = _arr(chi2_val), _arr(q)
    with np.errstate(invalid="ignore"):
        val = q + np.sqrt(q * chi2_val)
    return np.where(np.isinf(chi2_val), 1.0, np.clip(val, 0.0, 1.0))


def binary_entropy_array(p) -> np.ndarray:
    p = _arr(p)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -(p * np.log(p) + (1.0 - p) * np.log1p(-p))
    return np.where((p == 0.0) | (p == 1.0), 0.0, h)
