"""Small root-finding and 1-D minimisation helpers."""

from __future__ import annotations

import math
from typing import Callable

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def bisect_decreasing(g: Callable[[float], float], lo: float, hi: float, tol: float, max_iter: int = 200) -> tuple[float, float]:
    """Bracket the sign change of a function with g(lo) >= 0 > g(hi).

    Returns the final (lo, hi) with g(lo) >= 0 and g(hi) < 0.
    """
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10, max_iter: int = 500) -> tuple[float, float]:
    """Minimise a unimodal f on [a, b]; returns (argmin, min)."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    fx = f(x)
    best = min((fx, x), (fc, c), (fd, d))
    return best[1], best[0]
