import math

import numpy as np
import pytest

from fanobounds import applications as apps
from fanobounds.divergences import ConvexGenerator, divergence_finite, kl_bernoulli
from fanobounds.errors import BadC, BadDimension, BadEpsilon, BadRange, InputError, NonPositive, TooLarge
from fanobounds.extreal import INF


class TestPosterior:
    def test_small_dimensions(self):
        c1, rho1 = apps.posterior_constant(1)
        c2, rho2 = apps.posterior_constant(2)
        assert c1 == pytest.approx(0.546504, abs=1e-6) and rho1 == pytest.approx(4.5591, abs=1e-3)
        assert c2 == pytest.approx(0.358019, abs=1e-6) and rho2 == pytest.approx(3.4810, abs=1e-3)

    def test_witnesses(self):
        assert float(apps._posterior_objective(1, 5.0)) == pytest.approx(0.5484, abs=1e-4)
        assert float(apps._posterior_objective(2, 3.0)) == pytest.approx(0.3641, abs=1e-4)

    def test_large_dimension_limit(self):
        c, rho = apps.posterior_constant(10**6)
        assert c == pytest.approx(math.sqrt(math.e) / 8, abs=1e-6)
        assert rho == pytest.approx(math.sqrt(math.e), abs=1e-4)

    def test_minimax_rate(self):
        eps, bound = apps.posterior_minimax_bound(apps.GaussianModel(1, 64, 8.0))
        assert eps == pytest.approx(0.125)
        assert bound == pytest.approx(apps.posterior_constant(1)[0])
        assert apps.posterior_minimax_bound(apps.GaussianModel(1, 64, 64.0))[0] == pytest.approx(1.0)
        assert apps.posterior_minimax_bound(apps.GaussianModel(1, 1, 1.0))[0] == pytest.approx(1 / 8)

    def test_bad_dimension(self):
        with pytest.raises(BadDimension):
            apps.posterior_constant(0)


class TestPsi:
    def test_gaussian(self):
        assert float(apps.psi_gaussian(1.0, 2.0)) == pytest.approx(0.5)
        assert float(apps.psi_gaussian(0.5, 1.0)) == pytest.approx(0.5)
        assert float(apps.psi_gaussian(1e-9, 1.0)) < 1e-17
        with pytest.raises(NonPositive):
            apps.psi_gaussian(0.0, 1.0)

    def test_bernoulli(self):
        assert float(apps.psi_bernoulli(0.05, 0.5)) == pytest.approx(float(kl_bernoulli(0.6, 0.5)))
        assert apps.psi_bernoulli(0.6, 0.5) == INF

    def test_dd_bound(self):
        assert apps.posterior_dd_bound(0.1, 10, 2.0) == pytest.approx(0.25 * math.exp(-2), abs=1e-12)
        assert apps.posterior_dd_bound(INF, 10, 2.0) == 0.0
        assert apps.posterior_dd_bound(0.0, 1, 1 + 1e-12) == pytest.approx(0.5)
        with pytest.raises(BadC):
            apps.posterior_dd_bound(0.1, 10, 1.0)


class TestSparseRegret:
    def test_large_T(self):
        b = apps.sparse_regret_bound(16, 4, 1600)
        assert b.bound == pytest.approx(math.sqrt(1600 * 0.25 * math.log(16)) / 32, abs=1e-12)
        assert b.bound == pytest.approx(1.0406933, abs=1e-7)
        assert b.regime == "large_T" and b.active_term == "sqrt"

    def test_T_one_takes_linear_term(self):
        b = apps.sparse_regret_bound(16, 4, 1)
        assert b.bound == pytest.approx(1 / 64)
        assert b.active_term == "linear"
        # the proof's threshold N ln N / (16 s) is about 0.69, so T = 1 already counts as large
        assert b.regime == "large_T"
        assert b.epsilon_used < 4 / 32

    def test_small_T_regime(self):
        b = apps.sparse_regret_bound(1000, 1, 10)
        assert b.regime == "small_T" and b.epsilon_used == pytest.approx(1 / 4000)

    def test_null(self):
        b = apps.sparse_regret_bound(8, 0, 100)
        assert b.bound == 0.0 and b.regime == "null"

    def test_epsilon_choice_gives_the_bound(self):
        # with eps = 1/(4c) the chain T eps (1/2 - c eps) equals T eps / 4
        for n, s, t in [(16, 4, 1600), (8, 2, 512), (50, 3, 10**5)]:
            b = apps.sparse_regret_bound(n, s, t)
            assert t * b.epsilon_used / 4 == pytest.approx(b.sqrt_term)
            assert apps.sparse_chain_value(n, s, t, b.epsilon_used) >= b.sqrt_term


class TestSparseEnv:
    def test_atom_count(self):
        family, base = apps.build_sparse_env(2, 2, 0.1)
        assert base.support.n_atoms == 4 and len(family) == 2

    def test_marginals(self):
        family, base = apps.build_sparse_env(4, 2, 0.05)
        assert family[0].marginal(1) == pytest.approx(0.25, abs=1e-15)
        assert family[0].marginal(0) == pytest.approx(0.25 - 0.05, abs=1e-15)
        assert base.marginal(3) == pytest.approx(0.25, abs=1e-15)

    def test_kl_matches_full_enumeration(self):
        family, base = apps.build_sparse_env(5, 2, 0.04)
        bound = (2 / 5) * float(kl_bernoulli(0.5 - 0.04 * 5 / 2, 0.5))
        for i in range(5):
            full = float(divergence_finite(ConvexGenerator.KL, family[i].as_dist(), base.as_dist()))
            assert family.kl_to_base(i) == pytest.approx(full, abs=1e-15)
            assert full <= bound + 1e-12

    def test_loss_vector_pushforward_contracts(self):
        family, base = apps.build_sparse_env(4, 2, 0.05)
        codes_q, wq = base.loss_vector_law()
        codes_p, wp = family[1].loss_vector_law()
        assert np.array_equal(codes_p, codes_q)
        pushed = sum(p * math.log(p / q) for p, q in zip(wp, wq) if p > 0)
        assert pushed <= family.kl_to_base(1) + 1e-15
        assert pushed < family.kl_to_base(1)

    def test_budget_and_epsilon(self):
        with pytest.raises(TooLarge):
            apps.build_sparse_env(40, 10, 0.01)
        with pytest.raises(BadEpsilon):
            apps.build_sparse_env(4, 2, 0.25)

    def test_chain(self):
        ch = apps.sparse_chain(6, 2, 50, 0.02)
        assert max(ch.kl_exact) - min(ch.kl_exact) < 1e-15
        assert max(ch.kl_exact) <= ch.kl_bound + 1e-10 <= ch.kl_quadratic + 2e-10
        assert ch.fano_value == pytest.approx(min(1.0, ch.chain_rhs), abs=1e-12)
        assert ch.regret_from_fano >= ch.regret_displayed


def test_kl_quadratic():
    lhs, rhs = apps.kl_quadratic_check(0.5, 0.1)
    assert lhs == pytest.approx(0.0201355, abs=1e-7) and rhs == pytest.approx(0.04)
    lhs, rhs = apps.kl_quadratic_check(0.5, 0.4)
    assert lhs == pytest.approx(0.3680642, abs=1e-7) and rhs == pytest.approx(0.64)
    with pytest.raises(BadRange):
        apps.kl_quadratic_check(0.5, 0.6)


class TestCramer:
    def test_limit_and_single_draw(self):
        r = apps.cramer_rate(0.5, 0.75, 1)
        assert r.limit_rate == pytest.approx(-0.130812, abs=1e-6)
        assert r.empirical_rate == pytest.approx(math.log(0.5), abs=1e-15)

    def test_n_1000(self):
        assert apps.cramer_rate(0.5, 0.75, 1000).empirical_rate == pytest.approx(-0.130812, abs=0.02)

    def test_strict_tie_excluded(self):
        # n x = 750 exactly: the event needs at least 751 successes
        assert apps.strict_tail_start(0.75, 1000) == 751
        assert apps.strict_tail_start(0.1, 30) == 4

    def test_huge_n_no_overflow(self):
        r = apps.cramer_rate(0.3, 0.5, 10**5)
        assert math.isfinite(r.empirical_rate) and r.empirical_rate <= r.limit_rate

    def test_bad_range(self):
        with pytest.raises(BadRange):
            apps.cramer_rate(0.5, 0.4, 10)


class TestMonteCarlo:
    def test_uniform_per_round_loss(self):
        # for the uniform strategy the expected loss per round is s/(2N) - eps/N
        n, s, t, eps = 8, 2, 256, 0.05
        res = apps.mc_regret_experiment(n, s, t, eps, "uniform", trials=400, seed=1)
        assert res.avg_mixture_regret > 0
        rng = np.random.default_rng([1, 0])
        losses = apps._sample_losses(rng, n, s, 20000, 0, 0.5 - eps * n / s)
        assert losses.mean() == pytest.approx(s / (2 * n) - eps / n, abs=3e-3)

    def test_deterministic(self):
        a = apps.mc_regret_experiment(4, 2, 32, strategy="hedge", trials=50, seed=7)
        b = apps.mc_regret_experiment(4, 2, 32, strategy="hedge", trials=50, seed=7)
        assert a == b

    def test_zero_trials(self):
        with pytest.raises(InputError):
            apps.mc_regret_experiment(4, 2, 32, trials=0)
