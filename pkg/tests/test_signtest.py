import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from votesign.errors import DomainError
from votesign.signtest import (
    FAIL_TO_REJECT,
    REJECT_MINUS,
    REJECT_PLUS,
    critical_values,
    p_value_one_sided,
    p_value_two_sided,
    run_sign_test,
)


def _tail_le(n, x):
    # independent oracle: exact rational arithmetic
    from fractions import Fraction

    return float(sum(Fraction(math.comb(n, k), 2**n) for k in range(0, x + 1)))


class TestPValues:
    def test_plus_n12_x10(self):
        assert p_value_one_sided(12, 10, "plus") == 79 / 4096

    def test_minus_single(self):
        assert p_value_one_sided(1, 0, "minus") == 0.5

    def test_minus_at_critical_value(self):
        assert p_value_one_sided(12, 2, "minus") == 79 / 4096
        assert round(79 / 4096, 3) == 0.019

    def test_two_sided(self):
        assert p_value_two_sided(12, 10) == 158 / 4096
        assert p_value_two_sided(12, 2) == 158 / 4096
        assert p_value_two_sided(12, 6) == 1.0

    @given(st.integers(1, 50).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
    def test_symmetry(self, nx):
        n, x = nx
        assert p_value_one_sided(n, x, "plus") == p_value_one_sided(n, n - x, "minus")

    @given(st.integers(1, 50).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
    def test_two_sided_recomputed(self, nx):
        n, x = nx
        p = p_value_two_sided(n, x)
        assert 0.0 < p <= 1.0
        upper = 1.0 - _tail_le(n, x - 1) if x > 0 else 1.0
        assert p == pytest.approx(min(1.0, 2 * min(upper, _tail_le(n, x))), abs=1e-15)

    @pytest.mark.parametrize("args", [(12, 13, "plus"), (12, -1, "minus"), (12, 3, "up")])
    def test_domain(self, args):
        with pytest.raises(DomainError):
            p_value_one_sided(*args)


class TestCriticalValues:
    def test_n12(self):
        cv = critical_values(12, 0.025)
        assert (cv.c_minus, cv.c_plus) == (2, 10)
        assert cv.exact_size == 79 / 4096

    def test_n2_degenerate(self):
        cv = critical_values(2, 0.025)
        assert cv.c_minus is None and cv.c_plus is None and cv.degenerate

    def test_n12_alpha05(self):
        cv = critical_values(12, 0.05)
        assert cv.c_minus == 2
        assert _tail_le(12, 3) == 299 / 4096 > 0.05

    @pytest.mark.parametrize("alpha", [0.0, 0.5, -0.1, 0.7])
    def test_domain(self, alpha):
        with pytest.raises(DomainError):
            critical_values(12, alpha)

    @pytest.mark.parametrize("alpha", [0.001, 0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.45])
    def test_size_and_maximality(self, alpha):
        for n in range(1, 201):
            cv = critical_values(n, alpha)
            if cv.degenerate:
                assert _tail_le(n, 0) > alpha
                continue
            assert cv.exact_size <= alpha
            assert cv.exact_size == pytest.approx(_tail_le(n, cv.c_minus), rel=1e-12)
            assert _tail_le(n, cv.c_minus + 1) > alpha
            assert cv.c_plus == n - cv.c_minus


class TestRunSignTest:
    def test_worked_example(self):
        rep = run_sign_test(12, 10, 0.05, "two")
        assert rep.decision == REJECT_PLUS
        assert rep.p_two_sided == pytest.approx(0.03857, abs=1e-5)
        assert rep.c_minus == 2 and rep.c_plus == 10

    def test_center(self):
        assert run_sign_test(12, 6, 0.05, "two").decision == FAIL_TO_REJECT

    def test_reject_minus(self):
        assert run_sign_test(12, 1, 0.05, "two").decision == REJECT_MINUS

    def test_ties_excluded(self):
        rep = run_sign_test(13, 10, 0.05, "two", ties=1)
        assert rep.n == 12 and rep.ties_excluded == 1 and rep.decision == REJECT_PLUS

    def test_degenerate(self):
        rep = run_sign_test(2, 2, 0.05, "two")
        assert rep.degenerate and rep.decision == FAIL_TO_REJECT

    def test_one_sided_uses_full_alpha(self):
        rep = run_sign_test(12, 9, 0.1, "one")
        assert rep.c_plus == critical_values(12, 0.1).c_plus

    @pytest.mark.parametrize("n, alpha, sided", [(12, 0.05, "two"), (30, 0.05, "one"), (7, 0.2, "two")])
    def test_decision_consistency(self, n, alpha, sided):
        for x in range(n + 1):
            rep = run_sign_test(n, x, alpha, sided)
            assert (rep.decision == REJECT_PLUS) == (x >= rep.c_plus)
            assert (rep.decision == REJECT_MINUS) == (x <= rep.c_minus)
            assert rep.exact_size <= (alpha / 2 if sided == "two" else alpha)

    def test_bad_sidedness(self):
        with pytest.raises(DomainError):
            run_sign_test(12, 3, 0.05, "three")

    def test_all_ties(self):
        with pytest.raises(DomainError):
            run_sign_test(3, 0, 0.05, "two", ties=3)

    def test_null_rejection_rate_matches_size(self):
        rng = np.random.default_rng(2024)
        n, reps = 12, 200_000
        x = rng.binomial(n, 0.5, size=reps)
        cv = critical_values(n, 0.025)
        rate = np.mean((x <= cv.c_minus) | (x >= cv.c_plus))
        target = 2 * cv.exact_size
        se = math.sqrt(target * (1 - target) / reps)
        assert abs(rate - target) <= 3 * se
