"""Application-level lower bounds.

* Gaussian posterior concentration: the constant c_d and the matching rate.
* Distribution-dependent posterior bound 2^{-c} exp(-c n psi).
* Sparse-loss prediction with expert advice: the regret lower bound, an exact
  enumeration of the randomized environments used in its proof, and a Monte
  Carlo harness that runs simple strategies against them.
* Cramér's rate for Bernoulli sample means, with exact log-domain tails.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np
from scipy.special import gammaln, logsumexp

from ._numerics import golden_section
from .divergences import ConvexGenerator, FiniteDist, divergence_array, kl_bernoulli
from .errors import (
    BadC,
    BadDimension,
    BadEpsilon,
    BadRange,
    InputError,
    NonPositive,
    OutOfRange,
    TooLarge,
)
from .extreal import INF, ExtReal, ext
from .fano import FamilyEntry, ReducedPair, fano_kl_sqrt, reduce

RHO_MAX = 1e4
RHO_GRID_POINTS = 10_000
RHO_TOL = 1e-10
ENUMERATION_BUDGET = 1_000_000
SIMULATION_BUDGET = 50_000_000  # trials * T * N loss entries


# --- Gaussian posterior concentration --------------------------------------


@dataclass(frozen=True)
class GaussianModel:
    d: int
    n: int
    sigma: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise BadDimension(f"dimension must be an integer >= 1, got {self.d!r}")
        if int(self.n) != self.n or self.n < 1:
            raise OutOfRange(f"sample size must be an integer >= 1, got {self.n!r}")
        if not (self.sigma > 0):
            raise NonPositive(f"sigma must be positive, got {self.sigma!r}")


def _posterior_objective(d: int, rho):
    rho = np.asarray(rho, dtype=float)
    with np.errstate(divide="ignore", over="ignore"):
        return np.exp(-d * np.log(rho)) + rho / (8.0 * np.sqrt(2.0 * np.log(rho)))


def posterior_constant(d: int) -> tuple[float, float]:
    """c_d = inf_{rho > 1} rho^{-d} + rho / (8 sqrt(2 ln rho)); returns (c_d, argmin)."""
    if int(d) != d or d < 1:
        raise BadDimension(f"dimension must be an integer >= 1, got {d!r}")
    grid = 1.0 + np.geomspace(1e-8, RHO_MAX - 1.0, RHO_GRID_POINTS)
    vals = _posterior_objective(d, grid)
    j = int(np.argmin(vals))
    if j == len(grid) - 1:
        raise OutOfRange(f"minimiser hit the search boundary rho = {RHO_MAX}")
    a = grid[max(j - 1, 0)]
    b = grid[j + 1]
    rho, val = golden_section(lambda r: float(_posterior_objective(d, r)), a, b, tol=RHO_TOL)
    return val, rho


def posterior_minimax_bound(model: GaussianModel) -> tuple[float, float]:
    """(eps_n, c_d) with eps_n = (sigma / 8) sqrt(d / n)."""
    eps = model.sigma / 8.0 * math.sqrt(model.d / model.n)
    return eps, posterior_constant(model.d)[0]


@dataclass(frozen=True)
class PsiModulus:
    epsilon: float
    value: ExtReal


def psi_gaussian(epsilon: float, sigma: float) -> ExtReal:
    """Per-observation KL modulus for N(theta, sigma^2 I): (2 eps)^2 / (2 sigma^2)."""
    if not (epsilon > 0) or not (sigma > 0):
        raise NonPositive(f"epsilon and sigma must be positive, got {epsilon!r}, {sigma!r}")
    return ExtReal(2.0 * epsilon * epsilon / (sigma * sigma))


def psi_bernoulli(epsilon: float, theta: float) -> ExtReal:
    """Modulus for Ber(theta) under |theta' - theta|: min over theta' = theta +- 2 eps."""
    if not (epsilon > 0):
        raise NonPositive(f"epsilon must be positive, got {epsilon!r}")
    if not (0.0 < theta < 1.0):
        raise OutOfRange(f"theta must lie in (0, 1), got {theta!r}")
    cands = [t for t in (theta - 2 * epsilon, theta + 2 * epsilon) if 0.0 <= t <= 1.0]
    if not cands:
        return INF
    return min((kl_bernoulli(t, theta) for t in cands), key=float)


def posterior_dd_bound(psi, n: int, c: float) -> float:
    """2^{-c} exp(-c n psi)."""
    if not (c > 1):
        raise BadC(f"c must exceed 1, got {c!r}")
    if int(n) != n or n < 1:
        raise OutOfRange(f"n must be an integer >= 1, got {n!r}")
    psi = ext(psi)
    if psi.infinite:
        return 0.0
    return math.exp(-c * (math.log(2.0) + n * psi.value))


# --- sparse-loss regret ------------------------------------------------------


@dataclass(frozen=True)
class SparseLossConfig:
    n_arms: int
    sparsity: int
    horizon: int
    epsilon: float

    def __post_init__(self):
        _check_sparse(self.n_arms, self.sparsity, self.horizon)
        if self.sparsity < 1:
            raise OutOfRange("environments need at least one picked arm (s >= 1)")
        _check_eps(self.n_arms, self.sparsity, self.epsilon)

    @property
    def favored_loss(self) -> float:
        """Bernoulli parameter of the favored arm's loss when it is picked."""
        return 0.5 - self.epsilon * self.n_arms / self.sparsity


def _check_sparse(n: int, s: int, t: int) -> None:
    if int(n) != n or n < 2:
        raise OutOfRange(f"N must be an integer >= 2, got {n!r}")
    if int(s) != s or not (0 <= s <= n):
        raise OutOfRange(f"s must be an integer in [0, N], got {s!r}")
    if int(t) != t or t < 1:
        raise OutOfRange(f"T must be an integer >= 1, got {t!r}")


def _check_eps(n: int, s: int, eps: float) -> None:
    if not (0.0 < eps < s / (2.0 * n)):
        raise BadEpsilon(f"epsilon must lie in (0, s/(2N)) = (0, {s / (2.0 * n)!r}), got {eps!r}")


@dataclass(frozen=True)
class SparseRegretBound:
    bound: float
    epsilon_used: float
    regime: str  # "large_T", "small_T" or "null" (s = 0)
    active_term: str  # which term of the min is smaller: "linear" or "sqrt"
    linear_term: float
    sqrt_term: float


def sparse_regret_bound(n: int, s: int, t: int) -> SparseRegretBound:
    """min{ s T / (16 N), sqrt(T (s/N) ln N) / 32 }.

    ``regime`` follows the proof's threshold T > N ln N / (16 s), which picks
    epsilon; ``active_term`` says which term of the min is attained.  The two
    can disagree near the threshold.
    """
    _check_sparse(n, s, t)
    if s == 0:
        return SparseRegretBound(0.0, 0.0, "null", "linear", 0.0, 0.0)
    ln_n = math.log(n)
    linear = s * t / (16.0 * n)
    sqrt_term = math.sqrt(t * (s / n) * ln_n) / 32.0
    if t > n * ln_n / (16.0 * s):
        c = 2.0 * math.sqrt(n * t) / math.sqrt(s * ln_n)
        eps, regime = 1.0 / (4.0 * c), "large_T"
    else:
        eps, regime = s / (4.0 * n), "small_T"
    active = "linear" if linear <= sqrt_term else "sqrt"
    return SparseRegretBound(min(linear, sqrt_term), eps, regime, active, linear, sqrt_term)


def sparse_chain_value(n: int, s: int, t: int, eps: float) -> float:
    """T eps (1 - 1/N - sqrt(4 N T eps^2 / (s ln N))), the bound valid for each eps."""
    _check_sparse(n, s, t)
    _check_eps(n, s, eps)
    return t * eps * (1.0 - 1.0 / n - math.sqrt(4.0 * n * t * eps * eps / (s * math.log(n))))


@dataclass(frozen=True)
class SparseSupport:
    """Atoms (picked set, bit pattern); atom index = subset_index * 2^s + pattern_index."""

    n_arms: int
    sparsity: int
    subsets: np.ndarray  # (C(N, s), s) sorted arm indices
    patterns: np.ndarray  # (2^s, s) loss bits

    @property
    def n_atoms(self) -> int:
        return self.subsets.shape[0] * self.patterns.shape[0]

    def coordinate_indicator(self, k: int) -> np.ndarray:
        """1 on atoms where the loss of arm k equals 1."""
        hit = self.subsets == k  # (C, s)
        on = hit.astype(float) @ self.patterns.T  # (C, 2^s)
        return on.ravel()

    def loss_codes(self) -> np.ndarray:
        """Integer encoding of the full loss vector of each atom (bit k = loss of arm k)."""
        if self.n_arms > 62:
            raise TooLarge("loss vectors of more than 62 arms do not fit in int64 codes")
        powers = np.left_shift(np.int64(1), self.subsets.astype(np.int64))  # (C, s)
        return (powers @ self.patterns.T.astype(np.int64)).ravel()


@dataclass(frozen=True)
class SparseEnv:
    support: SparseSupport
    weights: np.ndarray
    favored: int | None  # None for the base distribution Q

    def marginal(self, k: int) -> float:
        """P(L_k = 1), by summation over atoms."""
        return math.fsum(self.weights * self.support.coordinate_indicator(k))

    def as_dist(self) -> FiniteDist:
        return FiniteDist(tuple(self.weights))

    def loss_vector_law(self) -> tuple[np.ndarray, np.ndarray]:
        """Pushforward onto loss vectors in {0,1}^N: (sorted codes, probabilities)."""
        codes = self.support.loss_codes()
        uniq, inv = np.unique(codes, return_inverse=True)
        return uniq, np.bincount(inv, weights=self.weights, minlength=len(uniq))


class SparseFamily(Sequence):
    """The environments P_1..P_N, built on demand so memory stays O(atoms)."""

    def __init__(self, support: SparseSupport, epsilon: float):
        self.support = support
        self.epsilon = epsilon
        n, s = support.n_arms, support.sparsity
        self._favored_p = 0.5 - epsilon * n / s
        self._base = 1.0 / support.n_atoms
        self._index = None

    def __len__(self) -> int:
        return self.support.n_arms

    def positions(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """(rows, columns) of ``subsets`` holding arm i."""
        sup = self.support
        if sup.sparsity == 1:
            return np.array([i]), np.array([0])
        if self._index is None:
            flat = sup.subsets.ravel()
            order = np.argsort(flat, kind="stable")
            bounds = np.searchsorted(flat[order], np.arange(sup.n_arms + 1))
            self._index = (order, bounds)
        order, bounds = self._index
        hits = order[bounds[i]:bounds[i + 1]]
        return hits // sup.sparsity, hits % sup.sparsity

    def _block(self, cols: np.ndarray) -> np.ndarray:
        """Weights of P_i on the subsets that pick arm i, one row per such subset."""
        bits = self.support.patterns[:, cols].T
        return self._base * 2.0 * np.where(bits == 1, self._favored_p, 1.0 - self._favored_p)

    def kl_to_base(self, i: int) -> float:
        """KL(P_i, Q) summed over the atoms where P_i and Q differ (the rest add exactly 0)."""
        _, cols = self.positions(i)
        w = self._block(cols).ravel()
        return divergence_array(ConvexGenerator.KL, w, np.full(w.shape, self._base))

    def kl_to_base_many(self, arms: Sequence[int]) -> list[float]:
        """``kl_to_base`` for several arms in one vectorised pass."""
        cols = [self.positions(i)[1] for i in arms]
        sizes = np.cumsum([c.size for c in cols])[:-1]
        w = self._block(np.concatenate(cols))
        terms = (w * np.log(w / self._base)).sum(axis=1)
        return [max(0.0, math.fsum(t)) for t in np.split(terms, sizes)]

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not (0 <= i < len(self)):
            raise IndexError(i)
        sup = self.support
        rows, cols = self.positions(i)
        w = np.full((sup.subsets.shape[0], sup.patterns.shape[0]), self._base)
        w[rows] = self._block(cols)
        return SparseEnv(sup, w.ravel(), i)

    def __iter__(self) -> Iterator[SparseEnv]:
        for i in range(len(self)):
            yield self[i]


def _subsets(n: int, s: int) -> np.ndarray:
    if s == 1:
        return np.arange(n).reshape(n, 1)
    return np.array(list(itertools.combinations(range(n), s)), dtype=np.int64).reshape(-1, s)


def _patterns(s: int) -> np.ndarray:
    idx = np.arange(2**s)
    return ((idx[:, None] >> np.arange(s)[None, :]) & 1).astype(np.int64)


@functools.lru_cache(maxsize=8)
def _support(n: int, s: int) -> SparseSupport:
    sup = SparseSupport(n, s, _subsets(n, s), _patterns(s))
    sup.subsets.flags.writeable = False
    sup.patterns.flags.writeable = False
    return sup


def sparse_atom_count(n: int, s: int) -> int:
    return math.comb(n, s) * 2**s


def _sparse_family(n: int, s: int, epsilon: float) -> SparseFamily:
    _check_sparse(n, s, 1)
    if s < 1:
        raise OutOfRange("environments need at least one picked arm (s >= 1)")
    _check_eps(n, s, epsilon)
    atoms = sparse_atom_count(n, s)
    if atoms > ENUMERATION_BUDGET:
        raise TooLarge(f"C(N,s) 2^s = {atoms} atoms exceeds the budget {ENUMERATION_BUDGET}")
    return SparseFamily(_support(n, s), epsilon)


def build_sparse_env(n: int, s: int, epsilon: float) -> tuple[SparseFamily, SparseEnv]:
    """Exact finite-support P_1..P_N and Q of the sparse-loss construction."""
    family = _sparse_family(n, s, epsilon)
    sup = family.support
    return family, SparseEnv(sup, np.full(sup.n_atoms, 1.0 / sup.n_atoms), None)


@dataclass(frozen=True)
class SparseChain:
    """Every link of the Fano argument for one (N, s, T, eps)."""

    kl_exact: tuple  # KL(P_i, Q) for each i
    kl_bound: float  # (s/N) kl(1/2 - eps N/s, 1/2)
    kl_quadratic: float  # (s/N) * 4 N^2 eps^2 / s^2
    fano_value: float  # fano_kl_sqrt with T * KL_i and q_bar = 1/N
    chain_rhs: float  # 1/N + sqrt(sum_i T KL_i / (N ln N)), unclipped
    regret_from_fano: float  # T eps (1 - fano_value)
    regret_displayed: float  # sparse_chain_value


def sparse_chain(n: int, s: int, t: int, epsilon: float, arms: Sequence[int] | None = None) -> SparseChain:
    """Exact KLs plugged through the reduction.

    With ``arms=None`` every P_i is evaluated and the family goes through
    ``reduce``.  Passing ``arms`` evaluates only those indices and takes the
    average divergence over them, which is exact when the family is symmetric
    in i (``kl_exact`` lets the caller confirm that on the sample).
    """
    family = _sparse_family(n, s, epsilon)
    kls = family.kl_to_base_many(range(n) if arms is None else list(arms))
    if arms is None:
        red = reduce([FamilyEntry(1.0 / n, 0.0, 1.0 / n, t * k) for k in kls])
        d_sum = math.fsum(t * k for k in kls) / n
    else:
        d_sum = t * math.fsum(kls) / len(kls)
        red = ReducedPair(0.0, 1.0 / n, d_sum)
    fano = fano_kl_sqrt(red).value
    kl_b = float(kl_bernoulli(0.5 - epsilon * n / s, 0.5))
    return SparseChain(
        kl_exact=tuple(kls),
        kl_bound=(s / n) * kl_b,
        kl_quadratic=(s / n) * 4.0 * n * n * epsilon * epsilon / (s * s),
        fano_value=fano,
        chain_rhs=1.0 / n + math.sqrt(d_sum / math.log(n)),
        regret_from_fano=t * epsilon * (1.0 - fano),
        regret_displayed=sparse_chain_value(n, s, t, epsilon),
    )


def kl_quadratic_check(p: float, epsilon: float) -> tuple[float, float]:
    """(kl(p - eps, p), eps^2 / (p (1 - p)))."""
    if not (0.0 < p < 1.0) or not (0.0 < epsilon < p):
        raise BadRange(f"need 0 < epsilon < p < 1, got p={p!r}, epsilon={epsilon!r}")
    return float(kl_bernoulli(p - epsilon, p)), epsilon * epsilon / (p * (1.0 - p))


# --- Monte Carlo regret -------------------------------------------------------


@dataclass(frozen=True)
class RegretExperiment:
    avg_mixture_regret: float
    stderr: float
    theoretical_floor: float
    trials: int
    strategy: str
    epsilon: float


def _sample_losses(rng: np.random.Generator, n: int, s: int, t: int, favored: int, p_fav: float) -> np.ndarray:
    picked = np.argpartition(rng.random((t, n)), s - 1, axis=1)[:, :s]
    probs = np.where(picked == favored, p_fav, 0.5)
    bits = (rng.random((t, s)) < probs).astype(float)
    losses = np.zeros((t, n))
    np.put_along_axis(losses, picked, bits, axis=1)
    return losses


def _expected_strategy_loss(losses: np.ndarray, strategy: str, eta: float) -> float:
    if strategy == "uniform":
        return math.fsum(losses.mean(axis=1))
    cum = np.cumsum(losses, axis=0)
    prev = np.vstack([np.zeros((1, losses.shape[1])), cum[:-1]])
    logits = -eta * prev
    logits -= logits.max(axis=1, keepdims=True)
    w = np.exp(logits)
    w /= w.sum(axis=1, keepdims=True)
    return math.fsum((w * losses).sum(axis=1))


def mc_regret_experiment(
    n: int,
    s: int,
    t: int,
    epsilon: float | None = None,
    strategy: str = "uniform",
    trials: int = 2000,
    seed: int = 0,
    eta: float | None = None,
) -> RegretExperiment:
    """Mixture-averaged expected regret of a strategy over the environments P_i.

    Trial j plays against P_{j mod N} with its own generator seeded by (seed, j),
    so the result does not depend on execution order.  The strategy's internal
    randomization is integrated out exactly.
    """
    _check_sparse(n, s, t)
    if s < 1:
        raise OutOfRange("environments need at least one picked arm (s >= 1)")
    if int(trials) != trials or trials < 1:
        raise InputError(f"trials must be a positive integer, got {trials!r}")
    if strategy not in ("uniform", "hedge"):
        raise OutOfRange(f"unknown strategy {strategy!r}; expected uniform or hedge")
    floor = sparse_regret_bound(n, s, t)
    if epsilon is None:
        epsilon = floor.epsilon_used
    _check_eps(n, s, epsilon)
    if trials * t * n > SIMULATION_BUDGET:
        raise TooLarge(f"trials * T * N = {trials * t * n} exceeds {SIMULATION_BUDGET}")
    if eta is None:
        eta = math.sqrt(8.0 * math.log(n) / t)
    p_fav = 0.5 - epsilon * n / s
    regrets = np.empty(trials)
    for j in range(trials):
        rng = np.random.default_rng([seed, j])
        losses = _sample_losses(rng, n, s, t, j % n, p_fav)
        best = losses.sum(axis=0).min()
        regrets[j] = _expected_strategy_loss(losses, strategy, eta) - best
    mean = math.fsum(regrets) / trials
    sd = math.sqrt(math.fsum((regrets - mean) ** 2) / max(trials - 1, 1))
    return RegretExperiment(mean, sd / math.sqrt(trials), floor.bound, trials, strategy, epsilon)


# --- Cramér rate --------------------------------------------------------------


@dataclass(frozen=True)
class CramerRate:
    empirical_rate: float
    limit_rate: float
    k_min: int


def _check_cramer(theta: float, x: float, n: int) -> None:
    if not (0.0 < theta < x < 1.0):
        raise BadRange(f"need 0 < theta < x < 1, got theta={theta!r}, x={x!r}")
    if int(n) != n or n < 1:
        raise BadRange(f"n must be an integer >= 1, got {n!r}")


def strict_tail_start(x: float, n: int) -> int:
    """Smallest integer k with k > n x (x read as a rational, so exact ties are excluded)."""
    frac = Fraction(x).limit_denominator(10**12)
    return math.floor(frac * n) + 1


def log_binomial_tail(theta: float, n: int, k_min: int) -> float:
    """ln P(Bin(n, theta) >= k_min)."""
    if k_min > n:
        return -math.inf
    k_min = max(k_min, 0)
    k = np.arange(k_min, n + 1, dtype=float)
    terms = gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0) + k * math.log(theta) + (n - k) * math.log1p(-theta)
    return float(logsumexp(terms))


def cramer_rate(theta: float, x: float, n: int) -> CramerRate:
    """(1/n) ln P_theta(mean > x) next to its limit -kl(x, theta)."""
    _check_cramer(theta, x, n)
    k_min = strict_tail_start(x, n)
    emp = log_binomial_tail(theta, n, k_min) / n
    return CramerRate(emp, -float(kl_bernoulli(x, theta)), k_min)


def cramer_fano_lower(theta: float, x: float, n: int, eps: float) -> float:
    """Lower bound on ln P_theta(mean > x) from the Fano-type change of measure.

    Uses P_{x+eps}(mean > x) as the reference probability and
    P_theta(A) >= exp(-(n kl(x+eps, theta) + ln 2) / P_{x+eps}(A)).
    """
    _check_cramer(theta, x, n)
    if not (0.0 < eps < 1.0 - x):
        raise BadRange(f"eps must lie in (0, 1 - x), got {eps!r}")
    k_min = strict_tail_start(x, n)
    p_ref = math.exp(log_binomial_tail(x + eps, n, k_min))
    if p_ref == 0.0:
        return -math.inf
    return -(n * float(kl_bernoulli(x + eps, theta)) + math.log(2.0)) / p_ref
