import numpy as np
import pytest
from scipy import stats

from phasecomm import (
    FockDim,
    PnrConfig,
    helstrom_bound,
    map_error_probability,
    map_mutual_information,
    optimize_displacement,
    outcome_distribution,
)
from phasecomm.signals import SignalParams, bpsk, build_ensemble


def negate(params: SignalParams) -> SignalParams:
    return SignalParams(params.q1, -params.alpha1, -params.alpha2, params.sigma)


class TestOutcomeDistribution:
    def test_perfect_nulling(self):
        cfg = PnrConfig(resolution=2, visibility=1.0, displacement=0.7)
        probs = outcome_distribution(0.7, 0.0, cfg)
        np.testing.assert_allclose(probs, [1.0, 0.0, 0.0], atol=1e-15)

    def test_vacuum(self):
        cfg = PnrConfig(resolution=1, visibility=0.998, displacement=0.0)
        probs = outcome_distribution(0.0, 0.5, cfg)
        np.testing.assert_allclose(probs, [1.0, 0.0], atol=1e-12)

    def test_anti_nulling_is_binned_poisson(self):
        alpha = 0.6
        m = 3
        cfg = PnrConfig(resolution=m, visibility=1.0, displacement=-alpha)
        probs = outcome_distribution(alpha, 0.0, cfg)
        mean = 4.0 * alpha * alpha
        expected = [stats.poisson.pmf(k, mean) for k in range(m)]
        expected.append(1.0 - sum(expected))
        np.testing.assert_allclose(probs, expected, atol=1e-12)

    @pytest.mark.parametrize("sigma", [0.0, 0.4, 1.2])
    def test_valid_probability_vector(self, sigma):
        cfg = PnrConfig(resolution=4, visibility=0.998, displacement=0.5)
        probs = outcome_distribution(0.9, sigma, cfg)
        assert probs.min() >= 0.0
        assert probs.sum() == pytest.approx(1.0, abs=1e-10)

    def test_doubling_quadrature_is_converged(self):
        a = outcome_distribution(
            0.8, 0.9, PnrConfig(resolution=3, displacement=0.7, quadrature_points=64)
        )
        b = outcome_distribution(
            0.8, 0.9, PnrConfig(resolution=3, displacement=0.7, quadrature_points=128)
        )
        assert np.max(np.abs(a - b)) < 1e-8

    def test_config_validation(self):
        with pytest.raises(ValueError):
            outcome_distribution(0.5, 0.0, PnrConfig(resolution=0))
        with pytest.raises(ValueError):
            outcome_distribution(0.5, 0.0, PnrConfig(visibility=1.5))
        with pytest.raises(ValueError):
            outcome_distribution(0.5, 0.0, PnrConfig(quadrature_points=8))


class TestMapError:
    def test_identical_hypotheses(self):
        params = SignalParams(q1=0.3, alpha1=0.8, alpha2=0.8, sigma=0.4)
        cfg = PnrConfig(resolution=2, displacement=0.2)
        assert map_error_probability(params, cfg) == pytest.approx(0.3, abs=1e-12)

    def test_dominates_helstrom(self):
        params = bpsk(0.5, 0.6)
        ens = build_ensemble(params, FockDim(30))
        cfg = PnrConfig(resolution=1, visibility=0.998, displacement=params.alpha1)
        assert map_error_probability(params, cfg) >= helstrom_bound(ens) - 1e-9

    def test_nonincreasing_in_resolution(self):
        params = bpsk(0.5, 0.7)
        errs = [
            map_error_probability(
                params, PnrConfig(resolution=m, displacement=params.alpha1)
            )
            for m in (1, 2, 3, 4)
        ]
        assert all(b <= a + 1e-12 for a, b in zip(errs, errs[1:]))

    def test_sign_convention_invariance(self):
        params = SignalParams(q1=0.4, alpha1=0.5, alpha2=-0.9, sigma=0.6)
        cfg = PnrConfig(resolution=2, displacement=0.5)
        neg_cfg = PnrConfig(resolution=2, displacement=-0.5)
        assert map_error_probability(params, cfg) == pytest.approx(
            map_error_probability(negate(params), neg_cfg), abs=1e-14
        )

    def test_perfect_nulling_conditional(self):
        params = bpsk(0.5, 0.0)
        cfg = PnrConfig(resolution=1, visibility=1.0, displacement=params.alpha1)
        probs = outcome_distribution(params.alpha1, 0.0, cfg)
        assert probs[0] == 1.0


class TestMapInformation:
    def test_identical_hypotheses(self):
        params = SignalParams(q1=0.5, alpha1=0.8, alpha2=0.8, sigma=0.4)
        cfg = PnrConfig(resolution=2, displacement=0.1)
        assert map_mutual_information(params, cfg) == pytest.approx(0.0, abs=1e-12)

    def test_deterministic_separation_one_bit(self):
        params = SignalParams(q1=0.5, alpha1=0.0, alpha2=10.0, sigma=0.0)
        cfg = PnrConfig(resolution=1, visibility=1.0, displacement=0.0)
        assert map_mutual_information(params, cfg) == pytest.approx(1.0, abs=1e-10)

    def test_bounded_by_one_bit(self):
        params = bpsk(0.75, 0.5)
        cfg = PnrConfig(resolution=3, displacement=params.alpha1)
        assert 0.0 <= map_mutual_information(params, cfg) <= 1.0


class TestOptimizeDisplacement:
    def test_never_worse_than_null_first(self):
        params = bpsk(0.5, 0.6)
        base = PnrConfig(resolution=1, displacement=params.alpha1)
        _, best = optimize_displacement(params, base, "min-error")
        assert best <= map_error_probability(params, base) + 1e-12

    def test_information_objective(self):
        params = bpsk(0.5, 0.6)
        base = PnrConfig(resolution=1, displacement=params.alpha1)
        cfg, best = optimize_displacement(params, base, "max-information")
        assert best >= map_mutual_information(params, base) - 1e-12
        assert best == pytest.approx(map_mutual_information(params, cfg), abs=1e-12)

    def test_deterministic(self):
        params = bpsk(0.5, 0.9)
        base = PnrConfig(resolution=2, displacement=params.alpha1)
        a = optimize_displacement(params, base, "min-error")
        b = optimize_displacement(params, base, "min-error")
        assert a == b

    def test_unknown_objective(self):
        with pytest.raises(ValueError):
            optimize_displacement(bpsk(0.5, 0.0), PnrConfig(), "max-profit")
