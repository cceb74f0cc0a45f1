"""Fano-type lower bounds built from f-divergence reductions to Bernoulli pairs."""

from .divergences import (
    BernoulliPair,
    ConvexGenerator,
    FiniteDist,
    chi2_bernoulli,
    divergence_finite,
    hellinger2_bernoulli,
    kl_bernoulli,
)
from .extreal import INF, ZERO, ExtReal
from .fano import FamilyEntry, FanoReport, ReducedPair, all_reports, reduce
from .kl_bounds import kl_inverse

__all__ = [
    "BernoulliPair",
    "ConvexGenerator",
    "ExtReal",
    "FamilyEntry",
    "FanoReport",
    "FiniteDist",
    "INF",
    "ReducedPair",
    "ZERO",
    "all_reports",
    "chi2_bernoulli",
    "divergence_finite",
    "hellinger2_bernoulli",
    "kl_bernoulli",
    "kl_inverse",
    "reduce",
]

__version__ = "0.1.0"
