import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circmeans.bounds import (
    am_gm_sandwich,
    bernoulli_gap,
    bernoulli_log_gap,
    mid_bound,
    target_bound,
)
from circmeans.circle import mean_quadrature, mean_series
from circmeans.core import large_branch_threshold


class TestMidBound:
    def test_small_branch(self):
        assert mid_bound(1.0, 1.0) == 1.25
        assert mid_bound(0.5, 1.0) == 1.0625

    def test_large_branch(self):
        # y = 2, alpha = 1: y^2 = 4 >= threshold 2.
        assert mid_bound(2.0, 1.0) == 2.0

    def test_middle_branch_frozen_value(self):
        # t = 1.5, alpha = 1: 1/4 + sqrt(1.5) - (1/4) ln 1.5.
        y = math.sqrt(1.5)
        assert mid_bound(y, 1.0) == pytest.approx(1.3733785943645479536, abs=1e-14)

    def test_continuous_at_t_one(self):
        for alpha in (0.2, 0.9, 1.7, 2.0):
            below = mid_bound(1.0 - 1e-13, alpha)
            above = mid_bound(1.0 + 1e-13, alpha)
            assert below == pytest.approx(above, abs=1e-11)
            assert below == pytest.approx(1.0 + alpha * alpha / 4.0, abs=1e-11)

    def test_jump_at_large_threshold_stays_above_target(self):
        # Both one-sided values at t = (1-beta)^(-1) dominate the target;
        # their gap is beta^2 - beta(1-beta) ln(1/(1-beta)) >= 0.
        for alpha in (0.2, 0.8, 1.4, 1.9):
            beta = alpha / 2.0
            thr = large_branch_threshold(alpha)
            middle_limit = beta * beta + thr**beta - beta * (1.0 - beta) * math.log(thr)
            large_value = thr**beta
            expected_gap = beta * beta - beta * (1.0 - beta) * math.log(1.0 / (1.0 - beta))
            assert middle_limit - large_value == pytest.approx(expected_gap, rel=1e-10)
            assert expected_gap >= 0.0
            g = target_bound(math.sqrt(thr), alpha)
            assert large_value >= g - 1e-10
            assert middle_limit >= g - 1e-10

    def test_branch_switch_around_threshold(self):
        alpha = 1.2
        thr = large_branch_threshold(alpha)
        y_below = math.sqrt(thr) * (1.0 - 1e-9)
        y_above = math.sqrt(thr) * (1.0 + 1e-9)
        beta = alpha / 2.0
        assert mid_bound(y_above, alpha) == pytest.approx((y_above**2) ** beta, rel=1e-12)
        mid_formula = (
            beta**2 + (y_below**2) ** beta - beta * (1 - beta) * math.log(y_below**2)
        )
        assert mid_bound(y_below, alpha) == pytest.approx(mid_formula, rel=1e-12)

    def test_alpha_two_collapses_to_one_plus_t(self):
        for y in (0.3, 1.0, 2.5, 7.0):
            assert mid_bound(y, 2.0) == pytest.approx(1.0 + y * y, rel=1e-15)


class TestTargetBound:
    def test_examples(self):
        assert target_bound(0.0, 1.3) == 1.0
        assert target_bound(2.0, 2.0) == 5.0
        assert target_bound(1.0, 1.0) == pytest.approx(math.sqrt(1.5), abs=1e-15)


class TestGaps:
    def test_bernoulli_frozen_value(self):
        assert bernoulli_gap(0.5, 3.0) == pytest.approx(0.168861169915810334, abs=1e-15)

    def test_bernoulli_equality_cases(self):
        for t in (0.1, 1.0, 55.0):
            assert bernoulli_gap(1.0, t) == pytest.approx(0.0, abs=1e-12)
            assert bernoulli_gap(0.0, t) == pytest.approx(0.0, abs=1e-12)

    def test_bernoulli_nonnegative_bulk(self):
        rng = np.random.default_rng(11)
        beta = rng.uniform(0.0, 1.0, 10_000)
        t = rng.uniform(1e-12, 100.0, 10_000)
        gaps = 1.0 + beta**2 * t - (1.0 + beta * t) ** beta
        assert np.min(gaps) >= -1e-12

    def test_log_gap_frozen_value(self):
        assert bernoulli_log_gap(0.5, 2.0) == pytest.approx(
            0.076713204860013672646, abs=1e-15
        )

    def test_log_gap_at_t_one_reduces_to_bernoulli_form(self):
        for beta in (0.0, 0.3, 0.8):
            expected = beta * beta + 1.0 - (1.0 + beta) ** beta
            assert bernoulli_log_gap(beta, 1.0) == pytest.approx(expected, abs=1e-14)
            assert bernoulli_log_gap(beta, 1.0) >= 0.0

    def test_log_gap_nonnegative_bulk(self):
        rng = np.random.default_rng(12)
        beta = rng.uniform(0.0, 1.0 - 1e-9, 10_000)
        t = 1.0 + rng.random(10_000) * (1.0 / (1.0 - beta) - 1.0)
        gaps = beta**2 + t**beta - beta * (1.0 - beta) * np.log(t) - (1.0 + beta * t) ** beta
        assert np.min(gaps) >= -1e-12

    def test_log_gap_rejects_outside_hypothesis(self):
        with pytest.raises(ValueError):
            bernoulli_log_gap(0.5, 0.99)
        with pytest.raises(ValueError):
            bernoulli_log_gap(0.5, 2.01)
        with pytest.raises(ValueError):
            bernoulli_log_gap(1.0, 1.5)

    @settings(max_examples=300, deadline=None)
    @given(beta=st.floats(0.0, 1.0), t=st.floats(1e-9, 100.0))
    def test_bernoulli_property(self, beta, t):
        assert bernoulli_gap(beta, t) >= -1e-12

    @settings(max_examples=300, deadline=None)
    @given(beta=st.floats(0.0, 1.0 - 1e-9), frac=st.floats(0.0, 1.0))
    def test_log_gap_property(self, beta, frac):
        t = 1.0 + frac * (1.0 / (1.0 - beta) - 1.0)
        assert bernoulli_log_gap(beta, t) >= -1e-12


class TestChainOrdering:
    def test_small_branch_difference_is_bernoulli_gap_exactly(self):
        # Identical floating-point arithmetic on both routes.
        for alpha in (0.2, 0.7, 1.3, 2.0):
            for y in (0.1, 0.5, 0.9, 1.0):
                direct = mid_bound(y, alpha) - target_bound(y, alpha)
                via_gap = bernoulli_gap(alpha / 2.0, y * y)
                assert direct == via_gap

    def test_chain_on_dense_grid(self):
        for alpha in (0.25, 0.75, 1.5, 2.0):
            for y in np.geomspace(0.02, 5.0, 60):
                a = mean_quadrature(float(y), alpha, 1e-10)
                h = mid_bound(float(y), alpha)
                g = target_bound(float(y), alpha)
                assert a.value >= h - a.error_estimate - 1e-12
                assert h >= g - 1e-12

    def test_alpha_two_everything_coincides(self):
        for y in (0.0, 0.4, 1.0, 2.0, 4.0):
            s, _ = mean_series(y, 2.0)
            assert s.value == pytest.approx(1.0 + y * y, abs=1e-12)
            assert mid_bound(y, 2.0) == pytest.approx(1.0 + y * y, abs=1e-12)
            assert target_bound(y, 2.0) == pytest.approx(1.0 + y * y, abs=1e-12)


class TestAmGmSandwich:
    def test_ordering_and_jensen_midpoint(self):
        for y in (0.0, 0.5, 0.9, 1.5, 3.0):
            lower, mid, upper = am_gm_sandwich(y, 1.0)
            assert lower <= mid + 1e-9
            assert mid <= upper + 1e-9
            assert mid == pytest.approx(max(1.0, y), abs=1e-8)

    def test_fractional_exponent_at_one(self):
        lower, mid, upper = am_gm_sandwich(1.0, 0.5)
        assert lower <= mid <= upper
        assert mid == pytest.approx(1.0, abs=1e-4)

    def test_upper_matches_power_mean(self):
        # Exponent r = 2 - alpha with alpha = 1 at y = 2: the upper leg
        # is the mean the area route bounds through Jensen.
        _, _, upper = am_gm_sandwich(2.0, 1.0)
        assert upper == pytest.approx(mean_quadrature(2.0, 1.0, 1e-11).value, abs=1e-8)

    def test_divergent_negative_mean_rejected(self):
        with pytest.raises(ValueError, match="-1.5"):
            am_gm_sandwich(1.0, 1.5)

    def test_rejects_bad_exponent(self):
        with pytest.raises(ValueError):
            am_gm_sandwich(0.5, 0.0)
