import math

import mpmath as mp
import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import hyp2f1

from circmeans.bounds import mid_bound
from circmeans.circle import mean_quadrature
from circmeans.core import BranchRegime
from circmeans.disk import (
    area_integral_mean,
    inner_mean,
    inner_mean_near_one,
    lower_bound_from_area,
    radial_integral_lower,
)

mp.mp.dps = 40


def mp_inner_mean(t, alpha):
    """Arbitrary-precision oracle: 2F1(1-a/2, 1-a/2; 1; t^2)."""
    a = 1 - mp.mpf(alpha) / 2
    return float(mp.hyp2f1(a, a, 1, (mp.mpf(1) - mp.mpf(t)) ** 0 * mp.mpf(t) ** 2))


class TestInnerMean:
    def test_against_scipy_hypergeometric(self):
        # The mean of |1+t*zeta|^(beta) equals 2F1(-b/2,-b/2;1;t^2).
        ts = np.array([0.0, 0.2, 0.5, 0.85, 0.95, 1.2, 2.0, 5.0])
        for alpha in (0.25, 0.7, 1.0, 1.3, 1.99):
            beta = alpha - 2.0
            mine = inner_mean(ts, alpha)
            for t, v in zip(ts, mine):
                if t <= 1.0:
                    ref = hyp2f1(-beta / 2, -beta / 2, 1.0, t * t)
                else:
                    ref = t**beta * hyp2f1(-beta / 2, -beta / 2, 1.0, t**-2)
                assert v == pytest.approx(ref, rel=2e-13)

    def test_alpha_two_is_one(self):
        assert np.all(inner_mean(np.array([0.0, 0.5, 1.0, 3.0]), 2.0) == 1.0)

    def test_divergence_at_circle_for_small_alpha(self):
        for alpha in (0.5, 1.0):
            with pytest.raises(ValueError):
                inner_mean(np.array([1.0]), alpha)

    def test_finite_limit_at_circle_above_one(self):
        # Gamma(alpha-1)/Gamma(alpha/2)^2 at t = 1 for alpha > 1.
        val = float(inner_mean(np.array([1.0]), 1.5)[0])
        ref = math.gamma(0.5) / math.gamma(0.75) ** 2
        assert val == pytest.approx(ref, rel=1e-14)

    def test_near_one_expansion_vs_mpmath(self):
        for alpha in (0.25, 0.5, 1.5, 1.99):
            a = 1 - mp.mpf(alpha) / 2
            for u in (0.1, 1e-3, 1e-8, 1e-12):
                t = 1 - mp.mpf(u)
                ref = float(mp.hyp2f1(a, a, 1, t * t))
                mine = float(inner_mean_near_one(np.array([u]), alpha)[0])
                assert mine == pytest.approx(ref, rel=1e-12)

    def test_near_one_degenerate_alpha_one(self):
        a = mp.mpf(1) / 2
        for u in (0.05, 1e-4, 1e-10):
            t = 1 - mp.mpf(u)
            ref = float(mp.hyp2f1(a, a, 1, t * t))
            mine = float(inner_mean_near_one(np.array([u]), 1.0)[0])
            assert mine == pytest.approx(ref, rel=1e-12)

    def test_near_one_survives_extreme_distances(self):
        # Far below double spacing of 1.0: the expansion must stay finite
        # and keep the leading u^(alpha-1) growth.
        v1 = float(inner_mean_near_one(np.array([1e-200]), 0.25)[0])
        v2 = float(inner_mean_near_one(np.array([1e-220]), 0.25)[0])
        assert math.isfinite(v1) and math.isfinite(v2)
        assert v2 / v1 == pytest.approx(10.0 ** (20 * 0.75), rel=1e-9)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            inner_mean(np.array([-0.1]), 1.0)
        with pytest.raises(ValueError):
            inner_mean_near_one(np.array([0.0]), 1.0)
        with pytest.raises(ValueError):
            inner_mean_near_one(np.array([0.7]), 1.0)


class TestAreaIntegralMean:
    @pytest.mark.parametrize("y", [0.0, 0.25, 1.0, 2.5, 4.0])
    def test_alpha_two_closed_form(self, y):
        # Inner mean is identically 1 and int r ln(1/r) dr = 1/4.
        r = area_integral_mean(y, 2.0, 1e-10)
        assert r.value == pytest.approx(1.0 + y * y, abs=1e-10)

    def test_y_zero(self):
        r = area_integral_mean(0.0, 1.0)
        assert r.value == 1.0 and r.error_estimate == 0.0

    def test_reference_point_against_quadrature(self):
        a = area_integral_mean(0.8, 1.0, 1e-8)
        q = mean_quadrature(0.8, 1.0, 1e-10)
        assert abs(a.value - q.value) <= 1e-7
        assert a.work > 0

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0, 1.5, 2.0])
    def test_agrees_with_quadrature_across_grid(self, alpha):
        for y in (0.1, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0):
            a = area_integral_mean(y, alpha, 1e-8)
            q = mean_quadrature(y, alpha, 1e-11)
            assert abs(a.value - q.value) <= 1e-7, (y, alpha)

    def test_interior_singularity_never_sampled(self):
        # y > 1 puts the divergent radius 1/y inside the domain; for
        # alpha <= 1 any exact hit would raise.  A scan across many y
        # exercising both singular pieces must stay clean.
        for y in np.linspace(1.05, 3.95, 30):
            r = area_integral_mean(float(y), 0.5, 1e-7)
            assert math.isfinite(r.value)

    def test_error_estimate_honest(self):
        for y, alpha in [(0.3, 0.7), (1.5, 0.25), (2.0, 1.0), (0.97, 1.3)]:
            a = area_integral_mean(y, alpha, 1e-8)
            q = mean_quadrature(y, alpha, 1e-12)
            assert abs(a.value - q.value) <= a.error_estimate + 1e-11

    def test_rejects_alpha_above_two(self):
        with pytest.raises(ValueError):
            area_integral_mean(0.5, 2.5)


class TestRadialIntegralLower:
    def test_quarter_inside_disk(self):
        # For y <= 1 the min is 1 and the weight integrates to exactly 1/4.
        for y, alpha in [(0.7, 1.3), (0.2, 0.4), (1.0, 1.0)]:
            r = radial_integral_lower(y, alpha)
            assert r.value == 0.25

    def test_frozen_closed_form_values(self):
        # 30-digit references for the two-piece closed form.
        assert radial_integral_lower(2.0, 1.0).value == pytest.approx(
            0.22585660243000683632, abs=1e-15
        )
        assert radial_integral_lower(3.0, 0.5).value == pytest.approx(
            0.17003164414148273745, abs=1e-15
        )

    def test_continuous_across_one(self):
        for alpha in (0.3, 1.0, 1.7, 2.0):
            below = radial_integral_lower(1.0 - 1e-12, alpha).value
            above = radial_integral_lower(1.0 + 1e-12, alpha).value
            assert below == pytest.approx(above, abs=1e-10)
            assert below == pytest.approx(0.25, abs=1e-10)

    def test_bounded_by_quarter_and_positive(self):
        rng = np.random.default_rng(2024)
        for _ in range(300):
            y = float(rng.uniform(0.01, 6.0))
            alpha = float(rng.uniform(0.05, 2.0))
            v = radial_integral_lower(y, alpha).value
            assert 0.0 < v <= 0.25

    def test_matches_brute_force_quadrature(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            y = float(rng.uniform(0.05, 5.0))
            alpha = float(rng.uniform(0.1, 2.0))
            pts = [1.0 / y] if y > 1.0 else []
            ref, _ = quad(
                lambda r: min(1.0, (y * r) ** (alpha - 2.0)) * r * math.log(1.0 / r)
                if r > 0 else 0.0,
                0.0, 1.0, points=pts, epsabs=1e-12, epsrel=1e-12, limit=200,
            )
            mine = radial_integral_lower(y, alpha).value
            assert mine == pytest.approx(ref, abs=1e-9)

    def test_regime_tag(self):
        assert radial_integral_lower(0.5, 1.0).regime is BranchRegime.SMALL
        assert radial_integral_lower(2.0, 1.0).regime is BranchRegime.LARGE

    def test_rejects_y_zero(self):
        with pytest.raises(ValueError):
            radial_integral_lower(0.0, 1.0)


class TestLowerBoundFromArea:
    def test_small_branch_value(self):
        assert lower_bound_from_area(0.5, 1.0) == pytest.approx(1.0625, abs=1e-15)
        assert lower_bound_from_area(0.5, 1.0) == mid_bound(0.5, 1.0)

    def test_y_zero(self):
        assert lower_bound_from_area(0.0, 1.3) == 1.0

    def test_equals_mid_bound_small_and_middle(self):
        for alpha in (0.3, 0.9, 1.5, 2.0):
            thr = math.inf if alpha == 2.0 else (1.0 - alpha / 2.0) ** -1
            for t in (0.2, 0.9, 1.0):
                y = math.sqrt(t)
                assert lower_bound_from_area(y, alpha) == pytest.approx(
                    mid_bound(y, alpha), rel=1e-13
                )
            if math.isfinite(thr):
                y_mid = math.sqrt(0.5 * (1.0 + thr))
                assert lower_bound_from_area(y_mid, alpha) == pytest.approx(
                    mid_bound(y_mid, alpha), rel=1e-13
                )

    def test_dominates_mid_bound_at_large_threshold(self):
        # At t = (1 - beta)^(-1) the area bound exceeds t^beta by
        # beta^2 - beta(1-beta) ln(1/(1-beta)) >= 0.
        for alpha in (0.3, 1.0, 1.9):
            thr = (1.0 - alpha / 2.0) ** -1
            y = math.sqrt(thr)
            assert lower_bound_from_area(y, alpha) >= mid_bound(y, alpha) - 1e-12

    def test_falls_below_mid_bound_deep_in_large_branch(self):
        # Far beyond the threshold the -ln t term wins and the area route
        # is genuinely weaker than the Jensen floor t^(alpha/2); that is
        # why the large branch is not proved through the area integral.
        alpha = 0.3
        beta = alpha / 2.0
        t = math.exp(2.0 * beta / (1.0 - beta))       # ln t twice the crossover
        y = math.sqrt(t)
        assert lower_bound_from_area(y, alpha) < mid_bound(y, alpha)
        # ... while still lower-bounding the mean itself.
        assert lower_bound_from_area(y, alpha) <= mean_quadrature(y, alpha, 1e-11).value

    def test_is_true_lower_bound_for_the_mean(self):
        for alpha in (0.25, 1.0, 1.75):
            for y in (0.3, 0.9, 1.4, 3.0):
                mean = area_integral_mean(y, alpha, 1e-8)
                assert lower_bound_from_area(y, alpha) <= mean.value + mean.error_estimate + 1e-8
