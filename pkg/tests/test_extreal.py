import math

import pytest

from fanobounds.errors import InputError
from fanobounds.extreal import INF, ZERO, ExtReal, ext, ext_sum


def test_zero_times_inf_is_zero():
    assert INF * 0 == 0
    assert ZERO * math.inf == 0
    assert 0 * INF == ZERO


def test_division_conventions():
    assert ExtReal(3.0) / 0 == INF
    assert ZERO / 0 == ZERO
    assert INF / math.inf == ZERO
    assert ExtReal(6.0) / 2 == 3.0


def test_float_inf_maps_to_INF():
    x = ExtReal(math.inf)
    assert x.infinite and x == INF
    assert float(x) == math.inf
    assert str(x) == "inf"


@pytest.mark.parametrize("bad", [-1.0, math.nan])
def test_rejects_negative_and_nan(bad):
    with pytest.raises(InputError):
        ExtReal(bad)


def test_ordering_against_floats():
    assert ExtReal(1.0) < 2
    assert INF > 1e308
    assert ext(2.5) >= 2.5


def test_ext_sum_zero_weight_skips_infinite_term():
    assert ext_sum([INF, 1.0], [0.0, 1.0]) == 1.0
    assert ext_sum([INF, 1.0], [0.5, 0.5]) == INF
    assert ext_sum([0.1] * 10) == pytest.approx(1.0, abs=1e-15)
