"""Non-negative extended reals with the measure-theoretic conventions
0 * inf = 0, x / 0 = inf for x > 0, 0 / 0 = 0.

Floats are accepted wherever an ``ExtReal`` is expected; ``math.inf`` maps to
``INF``.  Arithmetic never produces NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import InputError

Number = Union[int, float]


@dataclass(frozen=True, eq=False)
class ExtReal:
    value: float = 0.0
    infinite: bool = False

    def __post_init__(self):
        if self.infinite:
            object.__setattr__(self, "value", 0.0)
            return
        v = float(self.value)
        if math.isnan(v):
            raise InputError("extended real cannot be NaN")
        if v < 0:
            raise InputError(f"extended real must be non-negative, got {v!r}")
        if math.isinf(v):
            object.__setattr__(self, "value", 0.0)
            object.__setattr__(self, "infinite", True)
        else:
            object.__setattr__(self, "value", v)

    @classmethod
    def of(cls, x: "ExtReal | Number") -> "ExtReal":
        if isinstance(x, ExtReal):
            return x
        return cls(float(x))

    @property
    def is_finite(self) -> bool:
        return not self.infinite

    def __float__(self) -> float:
        return math.inf if self.infinite else self.value

    def __add__(self, other: "ExtReal | Number") -> "ExtReal":
        other = ExtReal.of(other)
        if self.infinite or other.infinite:
            return INF
        return ExtReal(self.value + other.value)

    __radd__ = __add__

    def __mul__(self, k: Number) -> "ExtReal":
        k = float(k)
        if k < 0 or math.isnan(k):
            raise InputError(f"scale factor must be non-negative, got {k!r}")
        if k == 0:
            return ZERO
        if self.infinite or math.isinf(k):
            return ZERO if (not self.infinite and self.value == 0) else INF
        return ExtReal(self.value * k)

    __rmul__ = __mul__

    def __truediv__(self, k: Number) -> "ExtReal":
        k = float(k)
        if k < 0 or math.isnan(k):
            raise InputError(f"divisor must be non-negative, got {k!r}")
        if k == 0:
            return ZERO if (not self.infinite and self.value == 0) else INF
        if self.infinite:
            return ZERO if math.isinf(k) else INF
        return ExtReal(self.value / k)

    def _key(self) -> float:
        return float(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, (ExtReal, int, float)):
            return self._key() == float(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._key())

    def __lt__(self, other) -> bool:
        return self._key() < float(other)

    def __le__(self, other) -> bool:
        return self._key() <= float(other)

    def __gt__(self, other) -> bool:
        return self._key() > float(other)

    def __ge__(self, other) -> bool:
        return self._key() >= float(other)

    def __repr__(self) -> str:
        return "ExtReal(inf)" if self.infinite else f"ExtReal({self.value!r})"

    def __str__(self) -> str:
        return "inf" if self.infinite else repr(self.value)


ZERO = ExtReal(0.0)
INF = ExtReal(0.0, infinite=True)


def ext(x: "ExtReal | Number") -> ExtReal:
    return ExtReal.of(x)


def ext_sum(terms, weights=None) -> ExtReal:
    """Weighted sum of extended reals; a zero weight kills an infinite term."""
    if weights is None:
        weights = [1.0] * len(terms)
    finite = []
    for t, w in zip(terms, weights):
        t = ExtReal.of(t)
        if w == 0:
            continue
        if t.infinite:
            return INF
        finite.append(w * t.value)
    return ExtReal(max(0.0, math.fsum(finite)))
