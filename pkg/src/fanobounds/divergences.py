"""Exact f-divergences between finite distributions and Bernoulli laws.

Three generators are supported: Kullback-Leibler (f(t) = t ln t),
chi-square (f(t) = t^2 - 1) and squared Hellinger (f(t) = (sqrt t - 1)^2).
Scalar functions return ``ExtReal``; the ``*_array`` variants work on numpy
arrays with ``np.inf`` standing for +inf and are what the grid checks use.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidDistribution, MismatchedSupport, NonPositiveSigma, OutOfRange
from .extreal import INF, ZERO, ExtReal, ext

NORMALIZATION_TOL = 1e-12


class ConvexGenerator(enum.Enum):
    KL = "kl"
    CHI2 = "chi2"
    HELLINGER = "hellinger"

    @property
    def maximal_slope(self) -> ExtReal:
        return ExtReal(1.0) if self is ConvexGenerator.HELLINGER else INF

    @property
    def f_at_zero(self) -> float:
        return {"kl": 0.0, "chi2": -1.0, "hellinger": 1.0}[self.value]

    def __call__(self, t: float) -> float:
        if t < 0:
            raise OutOfRange(f"generator evaluated at negative point {t!r}")
        if t == 0:
            return self.f_at_zero
        if self is ConvexGenerator.KL:
            return t * math.log(t)
        if self is ConvexGenerator.CHI2:
            return t * t - 1.0
        return (math.sqrt(t) - 1.0) ** 2

    def perspective(self, p: float, q: float) -> float:
        """q * f(p / q) for q > 0, in a cancellation-free form."""
        if self is ConvexGenerator.KL:
            return p * math.log(p / q) if p > 0 else 0.0
        if self is ConvexGenerator.CHI2:
            # differs from q*f(p/q) by 2(p - q); those terms sum to
            # -2 * singular mass, and any singular mass makes chi2 infinite
            return (p - q) ** 2 / q
        return (math.sqrt(p) - math.sqrt(q)) ** 2

    def bernoulli(self, p: float, q: float) -> ExtReal:
        if self is ConvexGenerator.KL:
            return kl_bernoulli(p, q)
        if self is ConvexGenerator.CHI2:
            return chi2_bernoulli(p, q)
        return ExtReal(hellinger2_bernoulli(p, q))

    def bernoulli_array(self, p, q) -> np.ndarray:
        if self is ConvexGenerator.KL:
            return kl_bernoulli_array(p, q)
        if self is ConvexGenerator.CHI2:
            return chi2_bernoulli_array(p, q)
        return hellinger2_bernoulli_array(p, q)

    @classmethod
    def parse(cls, name: str) -> "ConvexGenerator":
        key = name.strip().lower()
        aliases = {"kl": "kl", "chi2": "chi2", "chi-square": "chi2", "hellinger": "hellinger", "h2": "hellinger"}
        if key not in aliases:
            raise OutOfRange(f"unknown generator {name!r}; expected kl, chi2 or hellinger")
        return cls(aliases[key])


@dataclass(frozen=True)
class FiniteDist:
    """Probability vector over atoms 0..k-1.

    Weights summing to 1 within 1e-12 are renormalized; anything further off
    is rejected.
    """

    weights: tuple

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if len(w) == 0:
            raise InvalidDistribution("a distribution needs at least one atom")
        if any(math.isnan(x) or x < 0 for x in w):
            raise InvalidDistribution("weights must be non-negative numbers")
        total = math.fsum(w)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise InvalidDistribution(f"weights sum to {total!r}, not 1 (tolerance {NORMALIZATION_TOL})")
        if total != 1.0:
            w = tuple(x / total for x in w)
        object.__setattr__(self, "weights", w)

    @classmethod
    def point_mass(cls, j: int, k: int) -> "FiniteDist":
        return cls(tuple(1.0 if i == j else 0.0 for i in range(k)))

    @classmethod
    def uniform(cls, k: int) -> "FiniteDist":
        return cls((1.0 / k,) * k)

    def __len__(self) -> int:
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def push(self, mapping: Sequence[int], m: int | None = None) -> "FiniteDist":
        """Law of ``mapping[atom]`` (the pushforward under a deterministic map)."""
        if len(mapping) != len(self):
            raise MismatchedSupport("map must assign a target to every atom")
        m = (max(mapping) + 1) if m is None else m
        out = [[] for _ in range(m)]
        for w, j in zip(self.weights, mapping):
            out[j].append(w)
        return FiniteDist(tuple(math.fsum(ws) for ws in out))

    def mix(self, other: "FiniteDist", lam: float) -> "FiniteDist":
        """(1 - lam) * self + lam * other."""
        _check_same_support(self, other)
        return FiniteDist(tuple((1 - lam) * a + lam * b for a, b in zip(self.weights, other.weights)))

    def expect(self, z: Sequence[float]) -> float:
        if len(z) != len(self):
            raise MismatchedSupport("statistic length differs from atom count")
        hit = math.fsum(w * x for w, x in zip(self.weights, z))
        miss = math.fsum(w * (1.0 - x) for w, x in zip(self.weights, z))
        # go through the complement when it is the smaller side, so that an
        # event carrying all the mass evaluates to exactly 1
        val = min(1.0, max(0.0, 1.0 - miss if miss < hit else hit))
        # keep the support right when rounding reaches an endpoint: an exact
        # expectation is > 0 (< 1) as soon as one charged atom has z > 0 (z < 1)
        if val == 0.0 and any(w > 0.0 and x > 0.0 for w, x in zip(self.weights, z)):
            return math.ulp(0.0)
        if val == 1.0 and any(w > 0.0 and x < 1.0 for w, x in zip(self.weights, z)):
            return math.nextafter(1.0, 0.0)
        return val

    def prob(self, event: Sequence[bool]) -> float:
        return self.expect([1.0 if e else 0.0 for e in event])


@dataclass(frozen=True)
class BernoulliPair:
    p: float
    q: float

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise OutOfRange(f"Bernoulli parameter {name}={v!r} outside [0, 1]")

    def kl(self) -> ExtReal:
        return kl_bernoulli(self.p, self.q)

    def chi2(self) -> ExtReal:
        return chi2_bernoulli(self.p, self.q)

    def hellinger2(self) -> float:
        return hellinger2_bernoulli(self.p, self.q)

    def as_dists(self) -> tuple[FiniteDist, FiniteDist]:
        return FiniteDist((self.p, 1 - self.p)), FiniteDist((self.q, 1 - self.q))


def _check_unit(*vals: float) -> None:
    for v in vals:
        if not (0.0 <= v <= 1.0):
            raise OutOfRange(f"Bernoulli parameter {v!r} outside [0, 1]")


def _check_same_support(p: FiniteDist, q: FiniteDist) -> None:
    if len(p) != len(q):
        raise MismatchedSupport(f"distributions have {len(p)} and {len(q)} atoms")


def kl_bernoulli(p: float, q: float) -> ExtReal:
    """kl(p, q) = p ln(p/q) + (1-p) ln((1-p)/(1-q))."""
    _check_unit(p, q)
    if q == 0.0:
        return ZERO if p == 0.0 else INF
    if q == 1.0:
        return ZERO if p == 1.0 else INF
    total = 0.0
    if p > 0.0:
        total += p * math.log(p / q)
    if p < 1.0:
        total += (1.0 - p) * math.log((1.0 - p) / (1.0 - q))
    return ExtReal(max(0.0, total))


def chi2_bernoulli(p: float, q: float) -> ExtReal:
    _check_unit(p, q)
    if q == 0.0 or q == 1.0:
        return ZERO if p == q else INF
    return ExtReal((p - q) ** 2 / (q * (1.0 - q)))


def hellinger2_bernoulli(p: float, q: float) -> float:
    _check_unit(p, q)
    h2 = 2.0 * (1.0 - (math.sqrt(p * q) + math.sqrt((1.0 - p) * (1.0 - q))))
    return min(2.0, max(0.0, h2))


def kl_bernoulli_array(p, q) -> np.ndarray:
    p, q = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = np.where(p > 0, p * np.log(p / q), 0.0)
        t2 = np.where(p < 1, (1.0 - p) * np.log((1.0 - p) / (1.0 - q)), 0.0)
    out = np.maximum(t1 + t2, 0.0)
    out = np.where((q == 0) & (p > 0), np.inf, out)
    out = np.where((q == 1) & (p < 1), np.inf, out)
    return out


def chi2_bernoulli_array(p, q) -> np.ndarray:
    p, q = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
    edge = (q == 0) | (q == 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (p - q) ** 2 / (q * (1.0 - q))
    return np.where(edge, np.where(p == q, 0.0, np.inf), out)


def hellinger2_bernoulli_array(p, q) -> np.ndarray:
    p, q = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
    h2 = 2.0 * (1.0 - (np.sqrt(p * q) + np.sqrt((1.0 - p) * (1.0 - q))))
    return np.clip(h2, 0.0, 2.0)


def divergence_finite(f: ConvexGenerator, p: FiniteDist, q: FiniteDist) -> ExtReal:
    """Div_f(P, Q): sum over q_i > 0 of q_i f(p_i / q_i), plus singular mass times M_f."""
    _check_same_support(p, q)
    ac_terms = []
    singular = []
    for pi, qi in zip(p.weights, q.weights):
        if qi > 0:
            ac_terms.append(f.perspective(pi, qi))
        else:
            singular.append(pi)
    sing_mass = math.fsum(singular)
    ac = max(0.0, math.fsum(ac_terms))
    return ExtReal(ac) + f.maximal_slope * sing_mass


def kl_product_scale(base_kl: "ExtReal | float", n: int) -> ExtReal:
    """KL between n-fold products: n * KL(P, Q)."""
    if n < 1:
        raise OutOfRange(f"product order must be positive, got {n}")
    return ext(base_kl) * n


def kl_gaussian_iso(delta_sq: float, sigma: float, n: int = 1) -> float:
    """n * KL(N(a, s^2 I), N(b, s^2 I)) = n |a - b|^2 / (2 s^2)."""
    if sigma <= 0:
        raise NonPositiveSigma(f"sigma must be positive, got {sigma!r}")
    if delta_sq < 0:
        raise OutOfRange("squared distance must be non-negative")
    if n < 1:
        raise OutOfRange(f"sample size must be positive, got {n}")
    return n * delta_sq / (2.0 * sigma * sigma)


def divergence_array(f: ConvexGenerator, p, q) -> float:
    """Vectorised ``divergence_finite`` for large probability vectors (no validation)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise MismatchedSupport(f"shapes {p.shape} and {q.shape} differ")
    ac = q > 0
    pa, qa = p[ac], q[ac]
    if f is ConvexGenerator.KL:
        pos = pa > 0
        terms = pa[pos] * np.log(pa[pos] / qa[pos])
    elif f is ConvexGenerator.CHI2:
        terms = (pa - qa) ** 2 / qa
    else:
        terms = (np.sqrt(pa) - np.sqrt(qa)) ** 2
    ac_part = max(0.0, math.fsum(terms))
    sing = math.fsum(p[~ac])
    if sing == 0.0:
        return ac_part
    return ac_part + float(f.maximal_slope) * sing
