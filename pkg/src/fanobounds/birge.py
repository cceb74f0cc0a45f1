"""Birgé-type constants: c_N, the original d_N, and the Massart constant."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from ._numerics import bisect_decreasing
from .divergences import kl_bernoulli, kl_bernoulli_array
from .errors import BadN, OutOfRange
from .extreal import ext
from .kl_bounds import binary_entropy

ROOT_TOL = 1e-10
C_BRACKET = (1e-12, 1.0 - 1e-12)
D_SCAN_TOP = 1.0 - 1e-9
D_SCAN_STEP = 1e-4

MASSART = (2.0 * math.e - 1.0) / (2.0 * math.e)


def _check_n(n: int) -> None:
    if int(n) != n or n < 2:
        raise BadN(f"number of hypotheses must be an integer >= 2, got {n!r}")


def birge_g(c: float) -> float:
    """h(c)/c + ln(1 - c), continuous and strictly decreasing on (0, 1)."""
    return binary_entropy(c) / c + math.log1p(-c)


@lru_cache(maxsize=None)
def birge_c(n: int) -> float:
    """Unique c in (0, 1) with h(c)/c + ln(1 - c) = ln((N-1)/N)."""
    _check_n(n)
    target = math.log1p(-1.0 / n)
    lo, hi = bisect_decreasing(lambda c: birge_g(c) - target, *C_BRACKET, tol=ROOT_TOL)
    return 0.5 * (lo + hi)


def birge_r(n: int, b: float) -> float:
    """r_N(b) = kl(b, (1-b)/(N-1)) - b ln N."""
    return float(kl_bernoulli(b, (1.0 - b) / (n - 1))) - b * math.log(n)


@lru_cache(maxsize=None)
def birge_d(n: int) -> float:
    """Largest b in [0, 1) with r_N(b) <= 0."""
    _check_n(n)
    grid = np.arange(D_SCAN_TOP, 0.0, -D_SCAN_STEP)
    r = kl_bernoulli_array(grid, (1.0 - grid) / (n - 1)) - grid * math.log(n)
    below = np.flatnonzero(r <= 0)
    if below.size == 0:
        raise OutOfRange(f"r_N has no non-positive value on the scan grid for N={n}")
    j = below[0]
    b_lo = float(grid[j])
    b_hi = D_SCAN_TOP if j == 0 else float(grid[j - 1])
    lo, _ = bisect_decreasing(lambda b: -birge_r(n, b), b_lo, b_hi, tol=ROOT_TOL)
    return lo


def birge_bound(n: int, k_bar, variant: str = "cn") -> float:
    """max{constant, K_bar / ln N}, clipped to [0, 1]."""
    _check_n(n)
    if variant == "cn":
        const = birge_c(n)
    elif variant == "dn":
        const = birge_d(n)
    elif variant == "massart":
        const = MASSART
    else:
        raise OutOfRange(f"unknown variant {variant!r}; expected cn, dn or massart")
    k_bar = ext(k_bar)
    if k_bar.infinite:
        return 1.0
    return min(1.0, max(const, k_bar.value / math.log(n)))


@dataclass(frozen=True)
class BirgeConstants:
    n_hypotheses: int
    c_n: float
    d_n: float
    massart: float = MASSART


def comparison_table(n_values: Iterable[int]) -> list[BirgeConstants]:
    n_values = list(n_values)
    for n in n_values:
        _check_n(n)
    return [BirgeConstants(n, birge_c(n), birge_d(n)) for n in n_values]
