import unittest
import os
import sys

import numpy as np
from hypothesis import given, settings, strategies as st

# Add the project root to the path so we can import the modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.corr_equality.estimators import (
    GroupSummary, donner_rosner_rf, pearson_common_rho, pearson_equation_residual, summarize,
)
from src.corr_equality.rngdist import BivariateData, RngStream, draw_bivariate_normal_sample
from src.corr_equality.significance_tests import (
    BootstrapSettings, fisher_z_test, gv_test, mslr_test, slr_statistic, slr_test,
)

sizes = st.integers(min_value=4, max_value=40)
correlations = st.floats(min_value=-0.95, max_value=0.95, allow_nan=False)
seeds = st.integers(min_value=0, max_value=2 ** 32)


class TestInvariants(unittest.TestCase):
    """Property checks that hold for every valid input."""

    @settings(max_examples=100, deadline=None)
    @given(sizes, correlations, sizes, correlations)
    def test_closed_form_tests_are_exchangeable(self, n1, r1, n2, r2):
        g1, g2 = GroupSummary.from_correlation(n1, r1), GroupSummary.from_correlation(n2, r2)
        for test in (fisher_z_test, slr_test):
            forward, mirrored = test(g1, g2), test(g2, g1)
            self.assertEqual(forward.statistic, -mirrored.statistic)
            self.assertEqual(forward.p_value, mirrored.p_value)

    @settings(max_examples=25, deadline=None)
    @given(sizes, correlations, sizes, correlations, seeds)
    def test_monte_carlo_tests_are_exchangeable(self, n1, r1, n2, r2, seed):
        g1, g2 = GroupSummary.from_correlation(n1, r1), GroupSummary.from_correlation(n2, r2)
        boot = BootstrapSettings(m=200, master_seed=seed)
        s0, s1 = boot.stream.substream(0), boot.stream.substream(1)
        forward = mslr_test(g1, g2, boot, group_streams=(s0, s1))
        mirrored = mslr_test(g2, g1, boot, group_streams=(s1, s0))
        self.assertEqual(forward.p_value, mirrored.p_value)
        stream = RngStream(seed, 1)
        t0, t1 = stream.substream(0), stream.substream(1)
        self.assertEqual(gv_test(g1, g2, 1000, stream, group_streams=(t0, t1)).p_value,
                         gv_test(g2, g1, 1000, stream, group_streams=(t1, t0)).p_value)

    @settings(max_examples=25, deadline=None)
    @given(sizes, correlations, sizes, correlations, seeds)
    def test_p_values_in_unit_interval(self, n1, r1, n2, r2, seed):
        g1, g2 = GroupSummary.from_correlation(n1, r1), GroupSummary.from_correlation(n2, r2)
        outcomes = [
            fisher_z_test(g1, g2),
            slr_test(g1, g2),
            mslr_test(g1, g2, BootstrapSettings(m=200, master_seed=seed)),
            gv_test(g1, g2, 1000, RngStream(seed, 1)),
        ]
        for outcome in outcomes:
            self.assertTrue(0.0 <= outcome.p_value <= 1.0)

    @settings(max_examples=100, deadline=None)
    @given(sizes, sizes, correlations)
    def test_equal_correlations_give_zero_slr(self, n1, n2, r):
        g1, g2 = GroupSummary.from_correlation(n1, r), GroupSummary.from_correlation(n2, r)
        self.assertEqual(slr_statistic(g1, g2, pearson_common_rho(g1, g2)), 0.0)
        self.assertEqual(slr_statistic(g1, g2, donner_rosner_rf(g1, g2)), 0.0)

    @settings(max_examples=100, deadline=None)
    @given(sizes, correlations, sizes, correlations)
    def test_pearson_root_bracketed(self, n1, r1, n2, r2):
        g1, g2 = GroupSummary.from_correlation(n1, r1), GroupSummary.from_correlation(n2, r2)
        rho = pearson_common_rho(g1, g2)
        self.assertTrue(min(r1, r2) <= rho <= max(r1, r2))
        self.assertLess(abs(pearson_equation_residual(n1, r1, n2, r2, rho)), 1e-11)

    @settings(max_examples=50, deadline=None)
    @given(seeds,
           st.floats(min_value=-5, max_value=5), st.floats(min_value=0.1, max_value=10),
           st.floats(min_value=-5, max_value=5), st.floats(min_value=0.1, max_value=10))
    def test_affine_invariance(self, seed, shift_x, scale_x, shift_y, scale_y):
        data = draw_bivariate_normal_sample(12, 0, 0, 1, 1, 0.4, RngStream(seed))
        moved = BivariateData(xs=shift_x + scale_x * data.xs, ys=shift_y + scale_y * data.ys)
        self.assertAlmostEqual(summarize(data).r, summarize(moved).r, places=10)
        flipped = BivariateData(xs=-data.xs, ys=data.ys)
        self.assertAlmostEqual(summarize(flipped).r, -summarize(data).r, places=12)

    @settings(max_examples=10, deadline=None)
    @given(sizes, correlations, sizes, correlations, seeds)
    def test_deterministic_under_fixed_seed(self, n1, r1, n2, r2, seed):
        g1, g2 = GroupSummary.from_correlation(n1, r1), GroupSummary.from_correlation(n2, r2)
        boot = BootstrapSettings(m=200, master_seed=seed)
        self.assertEqual(mslr_test(g1, g2, boot).detail, mslr_test(g1, g2, boot).detail)
        self.assertEqual(gv_test(g1, g2, 1000, RngStream(seed, 1)).detail,
                         gv_test(g1, g2, 1000, RngStream(seed, 1)).detail)
        np.testing.assert_array_equal(
            draw_bivariate_normal_sample(n1, 0, 0, 1, 1, r1, RngStream(seed)).xs,
            draw_bivariate_normal_sample(n1, 0, 0, 1, 1, r1, RngStream(seed)).xs,
        )


if __name__ == '__main__':
    unittest.main()
