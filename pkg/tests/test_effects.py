import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from votesign.dist import BinomialParams, binomial_pmf_vector, poisson_binomial_pmf
from votesign.effects import (
    RandomEffectsSpec,
    StudyEffect,
    iso_curve,
    marginal_sign_probability,
    p_value_cdf,
    probability_vector,
    sign_probability,
    two_sample_sign_probability,
    zp,
)
from votesign.errors import DomainError
from votesign.dist import std_normal_cdf

sizes = st.integers(1, 2000)
deltas = st.floats(-1.0, 1.0)


def mc_marginal(n, theta, tau, draws, seed):
    """Monte Carlo average of Phi(sqrt(N) * delta) over delta ~ N(theta, tau^2)."""
    from scipy.special import ndtr

    rng = np.random.default_rng(seed)
    vals = ndtr(math.sqrt(n) * rng.normal(theta, tau, size=draws))
    return vals.mean(), vals.std(ddof=1) / math.sqrt(draws)


class TestSignProbability:
    def test_null(self):
        assert sign_probability(StudyEffect(100, 0.0)) == 0.5

    def test_scenario_large(self):
        assert sign_probability(StudyEffect(100, 0.0125661)) == pytest.approx(0.55, abs=1e-6)

    def test_scenario_small(self):
        # mpmath: Phi(-1.645) = 0.0499849055...
        assert sign_probability(StudyEffect(25, -0.3290)) == pytest.approx(0.04998490553912137, abs=1e-12)

    @given(sizes, st.floats(-1.0, 0.99), st.floats(0.001, 0.01))
    def test_increasing_in_delta(self, n, d, step):
        assert sign_probability(StudyEffect(n, d + step)) >= sign_probability(StudyEffect(n, d))

    def test_strictly_increasing_grid(self):
        for n in (4, 25, 100):
            vals = [sign_probability(StudyEffect(n, d)) for d in np.linspace(-0.5, 0.5, 101)]
            assert all(b > a for a, b in zip(vals, vals[1:]))
        vals = [sign_probability(StudyEffect(n, 0.05)) for n in range(1, 300)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("n, d", [(0, 0.1), (-3, 0.1), (10, math.inf), (10, math.nan)])
    def test_invalid_study(self, n, d):
        with pytest.raises(DomainError):
            StudyEffect(n, d)


class TestPValueCdf:
    def test_zp_orientation(self):
        assert std_normal_cdf(zp(0.025)) == pytest.approx(0.975, abs=1e-14)

    @pytest.mark.parametrize("n", [1, 10, 400])
    def test_uniform_under_null(self, n):
        assert p_value_cdf(StudyEffect(n, 0.0), 0.3) == pytest.approx(0.3, abs=1e-14)

    def test_half_matches_sign_probability(self):
        s = StudyEffect(100, 0.0125661)
        assert p_value_cdf(s, 0.5) == pytest.approx(sign_probability(s), abs=1e-12)
        assert p_value_cdf(s, 0.5) == pytest.approx(0.55, abs=1e-6)

    def test_high_power(self):
        # Phi(5 - 1.959964): 0.99881725070180...
        s = StudyEffect(100, 0.5)
        assert p_value_cdf(s, 0.025) == pytest.approx(0.9988172507018026, abs=1e-12)

    def test_matches_simulated_z_tests(self):
        rng = np.random.default_rng(11)
        n, delta, reps = 20, 0.3, 100_000
        from scipy.special import ndtr

        zstat = rng.normal(math.sqrt(n) * delta, 1.0, size=reps)
        pvals = 1 - ndtr(zstat)
        for p in (0.01, 0.05, 0.3, 0.5, 0.8):
            exact = p_value_cdf(StudyEffect(n, delta), p)
            emp = (pvals <= p).mean()
            assert abs(emp - exact) <= 4 * math.sqrt(exact * (1 - exact) / reps)

    @pytest.mark.parametrize("p", [0.0, 1.0, 1.3])
    def test_domain(self, p):
        with pytest.raises(DomainError):
            p_value_cdf(StudyEffect(10, 0.1), p)


class TestIsoCurve:
    def test_half(self):
        assert all(d == 0.0 for _, d in iso_curve(0.5, range(1, 100)))

    def test_pi_large(self):
        [(n, d)] = iso_curve(0.55, [100])
        assert n == 100 and d == pytest.approx(0.012566134685507403, abs=1e-12)

    def test_pi_small(self):
        [(_, d)] = iso_curve(0.05, [16])
        assert d == pytest.approx(-1.6448536269514728 / 4, abs=1e-12)

    @given(st.floats(0.001, 0.999), st.lists(sizes, min_size=1, max_size=20))
    def test_round_trip(self, target, ns):
        for n, d in iso_curve(target, ns):
            assert sign_probability(StudyEffect(n, d)) == pytest.approx(target, abs=1e-10)

    @pytest.mark.parametrize("target", [0.05, 0.55, 0.9])
    def test_magnitude_decreasing(self, target):
        ds = [abs(d) for _, d in iso_curve(target, range(10, 501, 10))]
        assert all(b < a for a, b in zip(ds, ds[1:]))

    @pytest.mark.parametrize("target, ns", [(1.0, [10]), (0.0, [10]), (0.3, []), (0.3, [0])])
    def test_domain(self, target, ns):
        with pytest.raises(DomainError):
            iso_curve(target, ns)


class TestMarginal:
    def test_symmetric(self):
        assert marginal_sign_probability(100, RandomEffectsSpec(0.0, 0.2)) == 0.5

    def test_fixed_effect_reduction(self):
        assert marginal_sign_probability(100, RandomEffectsSpec(0.05, 0.0)) == pytest.approx(0.6914624612740131, abs=1e-12)
        assert marginal_sign_probability(37, RandomEffectsSpec(-0.2, 0.0)) == sign_probability(StudyEffect(37, -0.2))

    def test_against_monte_carlo(self):
        est, se = mc_marginal(100, 0.05, 0.1, 1_000_000, 5)
        value = marginal_sign_probability(100, RandomEffectsSpec(0.05, 0.1))
        assert abs(value - est) <= 3 * se

    def test_invalid(self):
        with pytest.raises(DomainError):
            RandomEffectsSpec(0.1, -0.1)


def test_two_sample_extension():
    # two arms of N, difference in means has sd sigma*sqrt(2/N)
    assert two_sample_sign_probability(50, 0.2) == pytest.approx(std_normal_cdf(5 * 0.2), abs=1e-15)


def test_null_equivalence():
    studies = [StudyEffect(n, 0.0) for n in (10, 25, 40, 80, 100, 300)]
    pv = probability_vector(studies)
    assert all(p == 0.5 for p in pv)
    np.testing.assert_allclose(poisson_binomial_pmf(pv), binomial_pmf_vector(BinomialParams(6, 0.5)), atol=1e-15)
