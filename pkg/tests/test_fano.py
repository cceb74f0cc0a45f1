import math

import numpy as np
import pytest

from fanobounds import fano
from fanobounds.divergences import ConvexGenerator, FiniteDist
from fanobounds.errors import BadWeights, DegenerateLoss, DegenerateQBar, OutOfRange, ZeroWeight
from fanobounds.extreal import INF


@pytest.fixture
def half_pair():
    return fano.ReducedPair(0.4, 0.5, 0.0)


def test_reduce_averages():
    entries = fano.uniform_family([0.2, 0.6], [0.1, 0.3], [0.5, 1.5])
    red = fano.reduce(entries)
    assert (red.p_bar, red.q_bar, float(red.d_bar)) == pytest.approx((0.4, 0.2, 1.0))


def test_reduce_rejects_bad_weights():
    with pytest.raises(BadWeights):
        fano.reduce([fano.FamilyEntry(0.5, 0.1, 0.1, 0.0)])
    with pytest.raises(BadWeights):
        fano.reduce([])


def test_infinite_entry_with_zero_weight_is_ignored():
    red = fano.reduce([fano.FamilyEntry(0.0, 0.5, 0.5, INF), fano.FamilyEntry(1.0, 0.5, 0.5, 0.2)])
    assert float(red.d_bar) == pytest.approx(0.2)


def test_fano_kl_variants(half_pair):
    assert fano.fano_kl(half_pair, "refined").value == pytest.approx(0.5849625007211562, abs=1e-12)
    assert fano.fano_kl(half_pair, "classic").value == 1.0
    assert fano.fano_kl(half_pair, "classic").vacuous
    with pytest.raises(OutOfRange):
        fano.fano_kl(half_pair, "nonsense")


def test_fano_kl_sqrt_matches_closed_form():
    red = fano.ReducedPair(0.0, 1 / 8, 0.1 * math.log(8))
    # q + sqrt(d / ln(1/q)) = 1/8 + sqrt(0.1)
    assert fano.fano_kl_sqrt(red).value == pytest.approx(0.125 + math.sqrt(0.1), abs=1e-12)


@pytest.mark.parametrize("q_bar", [0.0, 1.0])
def test_degenerate_qbar(q_bar):
    red = fano.ReducedPair(0.3, q_bar, 0.1)
    for f in (lambda r: fano.fano_kl(r), fano.fano_kl_sqrt, fano.fano_kl_inverse, fano.fano_chi2, fano.fano_hellinger):
        with pytest.raises(DegenerateQBar, match="sum_i Q_i"):
            f(red)


def test_infinite_divergence_all_vacuous():
    red = fano.ReducedPair(0.3, 0.5, INF)
    assert all(r.value == 1.0 and r.vacuous for r in fano.all_reports(red))


def test_all_reports_families():
    red = fano.ReducedPair(0.3, 0.2, 0.3)
    assert [r.family for r in fano.all_reports(red, ConvexGenerator.HELLINGER)] == ["lecam", "lecam_sharp"]
    assert [r.family for r in fano.all_reports(red, ConvexGenerator.CHI2)] == ["chi2"]
    assert len(fano.all_reports(red)) == 6


def test_hellinger_range():
    with pytest.raises(OutOfRange):
        fano.fano_hellinger(fano.ReducedPair(0.3, 0.2, 2.5))


def test_haroutunian():
    assert fano.haroutunian_q_lower(0.8, 1.0) == pytest.approx(0.12046040, abs=1e-7)
    assert fano.haroutunian_q_lower(0.0, 1.0) == 0.0
    assert fano.haroutunian_q_lower(0.5, INF) == 0.0


def test_bayes_risk_identity_loss():
    prior = FiniteDist((0.5, 0.5))
    loss = 1.0 - np.eye(2)
    out = fano.bayes_risk_lower(prior, loss, [0.0, 0.0])
    assert out.loss_star == 0.5
    assert out.value == pytest.approx(1 - math.log(1.5) / math.log(2), abs=1e-12)


def test_bayes_risk_degenerate_loss():
    prior = FiniteDist((0.5, 0.5))
    with pytest.raises(DegenerateLoss):
        fano.bayes_risk_lower(prior, np.ones((2, 2)), [0.0, 0.0])
    zero = fano.bayes_risk_lower(prior, np.zeros((2, 2)), [0.0, 0.0])
    assert zero.zero_loss and zero.value == 0.0


def test_constant_alternative_is_mixture():
    dists = [FiniteDist((1.0, 0.0)), FiniteDist((0.0, 1.0))]
    alpha = FiniteDist((0.25, 0.75))
    alt = fano.best_constant_alternative(ConvexGenerator.KL, dists, alpha)
    assert alt.mixture.weights == pytest.approx((0.25, 0.75))
    # point masses against the mixture sit exactly at the cap on average: H(alpha) <= ln(1/min alpha)
    assert float(alt.avg_div) == pytest.approx(-(0.25 * math.log(0.25) + 0.75 * math.log(0.75)))
    assert float(alt.cap) == pytest.approx(math.log(4))


def test_caps_closed_form():
    alpha = FiniteDist((0.2, 0.8))
    assert float(fano.divergence_cap(ConvexGenerator.CHI2, alpha)) == pytest.approx(4.0)
    assert float(fano.divergence_cap(ConvexGenerator.HELLINGER, alpha)) == pytest.approx(2 - 2 * math.sqrt(0.2))
    with pytest.raises(ZeroWeight):
        fano.divergence_cap(ConvexGenerator.KL, FiniteDist((0.0, 1.0)))


def test_renyi_infty():
    assert fano.renyi_infty(FiniteDist((0.25,) * 4)) == pytest.approx(math.log(4))
