import math

import numpy as np
import pytest

from fanobounds import kl_bounds as kb
from fanobounds.divergences import kl_bernoulli
from fanobounds.errors import DegenerateQ, OutOfRange
from fanobounds.extreal import INF


def test_classic_at_half():
    assert kb.lb_classic(0.0, 0.25).bound_on_p == pytest.approx(math.log(2) / math.log(4), abs=1e-12)


def test_refined_values():
    assert kb.lb_refined(0.0, 0.5).bound_on_p == pytest.approx(0.5849625007211562, abs=1e-12)
    assert kb.lb_refined(0.1, 0.25).bound_on_p == pytest.approx(0.47581215, abs=1e-7)


def test_affine_values():
    assert kb.lb_affine(0.0, 0.5).bound_on_p == pytest.approx(0.605, abs=1e-12)
    assert kb.lb_affine(0.1, 0.1).bound_on_p == pytest.approx(0.21 + 0.079 + 0.1 / math.log(10), abs=1e-12)


def test_pinsker_fano_value():
    assert kb.lb_pinsker_fano(0.08, 0.1).bound_on_p == pytest.approx(0.28639618, abs=1e-7)


@pytest.mark.parametrize("solver", [kb.lb_classic, kb.lb_refined, kb.lb_affine, kb.lb_pinsker_fano])
def test_degenerate_q(solver):
    for q in (0.0, 1.0):
        with pytest.raises(DegenerateQ):
            solver(0.1, q)


@pytest.mark.parametrize("solver", [kb.lb_classic, kb.lb_refined, kb.lb_affine, kb.lb_pinsker_fano])
def test_infinite_divergence_is_vacuous(solver):
    out = solver(INF, 0.3)
    assert out.bound_on_p == 1.0 and out.vacuous


def test_pinsker_factor():
    assert float(kb.pinsker_factor(0.5)) == 2.0
    assert float(kb.pinsker_factor(0.25)) == pytest.approx(2 * math.log(3), abs=1e-12)
    assert kb.pinsker_factor(0.0) == INF and kb.pinsker_factor(1.0) == INF
    # continuity through 1/2
    assert float(kb.pinsker_factor(0.5 + 1e-9)) == pytest.approx(2.0, abs=1e-8)


@pytest.mark.parametrize("q", [1e-9, 1e-300, 1 - 1e-9, 0.9999999989999999, 0.2, 0.8])
def test_pinsker_factor_tails(q):
    # reference via ln(1-q) - ln q with exact 1-q; log1p(u/q) drifted near q = 1
    ref = (math.log1p(-q) - math.log(q)) / (1 - 2 * q)
    assert float(kb.pinsker_factor(q)) == pytest.approx(ref, rel=1e-14)
    assert float(kb.pinsker_factor_array(q)) == pytest.approx(ref, rel=1e-14)


def test_bretagnolle_huber():
    assert kb.bh_constant() == pytest.approx(0.6922006275553464, abs=1e-15)
    assert kb.bretagnolle_huber_q_lower(0.9, 0.5) == pytest.approx(0.9 - 1 + 0.6922006275553464 * math.exp(-0.5), abs=1e-12)
    assert kb.bretagnolle_huber_q_lower(0.1, 2.0) == 0.0


def test_lecam():
    assert kb.lecam_hellinger(0.5, 0.1).bound_on_p == pytest.approx(0.1 + math.sqrt(0.5 * 0.875), abs=1e-12)
    with pytest.raises(OutOfRange):
        kb.lecam_hellinger(2.5, 0.1)


def test_lecam_sharp_never_below_exact_sup():
    # the solved form must dominate every p with h2(p, q) <= budget
    from fanobounds.divergences import hellinger2_bernoulli

    for q in (0.05, 0.3, 0.79):
        for budget in np.linspace(0, 2, 41):
            ps = np.linspace(0, 1, 2001)
            ok = [p for p in ps if hellinger2_bernoulli(p, q) <= budget]
            assert max(ok) <= kb.lecam_hellinger(float(budget), q, sharp=True).bound_on_p + 1e-12


def test_chi2_solved():
    assert kb.chi2_solved(1.0, 0.25).bound_on_p == pytest.approx(0.75, abs=1e-12)
    assert kb.chi2_solved(INF, 0.0).bound_on_p == 1.0


def test_kl_inverse():
    assert kb.kl_inverse(0.3, 0.0) == 0.3
    assert kb.kl_inverse(0.3, math.log(1 / 0.3)) == 1.0
    p = kb.kl_inverse(0.1, 0.5)
    assert float(kl_bernoulli(p, 0.1)) == pytest.approx(0.5, abs=1e-9)
    assert float(kl_bernoulli(min(1.0, p + 1e-9), 0.1)) > 0.5


def test_binary_entropy():
    assert kb.binary_entropy(0.5) == pytest.approx(math.log(2), abs=1e-15)
    assert kb.binary_entropy(0.0) == 0.0 and kb.binary_entropy(1.0) == 0.0


def test_array_twins_agree():
    q = np.linspace(0.01, 0.99, 99)
    kl = np.linspace(0, 3, 99)
    for scalar, array in [
        (kb.lb_classic, kb.lb_classic_array),
        (kb.lb_refined, kb.lb_refined_array),
        (kb.lb_affine, kb.lb_affine_array),
        (kb.lb_pinsker_fano, kb.lb_pinsker_fano_array),
        (kb.chi2_solved, kb.chi2_solved_array),
    ]:
        want = [scalar(float(k), float(qq)).bound_on_p for k, qq in zip(kl, q)]
        np.testing.assert_allclose(array(kl, q), want, rtol=0, atol=1e-14)
    h2 = np.linspace(0, 2, 99)
    for sharp in (False, True):
        want = [kb.lecam_hellinger(float(h), float(qq), sharp).bound_on_p for h, qq in zip(h2, q)]
        np.testing.assert_allclose(kb.lecam_hellinger_array(h2, q, sharp), want, rtol=0, atol=1e-14)
