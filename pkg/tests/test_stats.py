"""
Statistics Tests
Summaries, critical values and t-tests against published summary rows
"""

import allure
import numpy as np
import pytest

from fairrank.exceptions import (
    DegenerateVarianceError, TooFewSamplesError, UnequalNError, UnsupportedAlphaError
)
from fairrank.stats import SummaryStats, critical_t, summarize, t_test

# |t| reported alongside the published rows; (ranker_a, ranker_b) -> |t|
REPORTED_T = {
    'exposure_disparity': {
        ('standard', 'representative'): 21.6780,
        ('standard', 'forced'): 8.5846,
        ('stochastic', 'forced'): 11.0921,
        ('forced', 'representative'): 15.5539,
        ('standard', 'stochastic'): 0.6223,
    },
    'exposure_share': {
        ('standard', 'representative'): 14.4573,
        ('standard', 'forced'): 5.0990,
        ('stochastic', 'forced'): 9.2631,
        ('forced', 'representative'): 10.8597,
    },
}

# pairs whose reported |t| is more than 0.01 away from the value the four-decimal rows give:
# (metric, pair, |t| computed from the rows, |t| reported)
DEVIATING_T = [
    ('exposure_disparity', ('stochastic', 'representative'), 33.3598, 33.3707),
    ('exposure_share', ('stochastic', 'representative'), 36.1778, 36.1970),
]


@allure.feature('Statistics')
@allure.story('Summaries')
@pytest.mark.stats
class TestSummarize:

    def test_constant_samples(self):
        assert summarize([0, 0, 0, 0]) == SummaryStats(n=4, mean=0.0, std=0.0, outlier_count=0)

    def test_bessel_corrected_std(self):
        stats = summarize([1, 2, 3])
        assert stats.mean == pytest.approx(2.0)
        assert stats.std == pytest.approx(1.0)

    def test_seeded_normal_draws(self):
        samples = np.random.default_rng(2024).normal(0.42, 0.14, size=80)
        stats = summarize(samples)
        assert stats.mean == pytest.approx(0.42, abs=0.05)
        assert stats.std == pytest.approx(0.14, abs=0.04)

    def test_outlier_count(self):
        samples = [0.0] * 30 + [10.0]
        assert summarize(samples, z_threshold=3.0).outlier_count == 1

    def test_too_few_samples(self):
        with pytest.raises(TooFewSamplesError):
            summarize([0.5])


@allure.feature('Statistics')
@allure.story('Critical Values')
@pytest.mark.stats
class TestCriticalT:

    def test_df_158_alpha_001(self):
        assert critical_t(158, 0.01) == pytest.approx(2.6073, abs=0.0005)

    def test_df_1_alpha_005(self):
        assert critical_t(1, 0.05) == pytest.approx(12.706, abs=0.01)

    def test_large_df_approaches_normal(self):
        assert critical_t(20000, 0.05) == pytest.approx(1.960, abs=0.001)

    def test_unsupported_alpha(self):
        with pytest.raises(UnsupportedAlphaError):
            critical_t(158, 0.10)


@allure.feature('Statistics')
@allure.story('Two-Sample t-Test')
@pytest.mark.stats
class TestTTest:

    @pytest.mark.parametrize('metric, pair, expected', [
        (metric, pair, value) for metric, rows in REPORTED_T.items() for pair, value in rows.items()
    ])
    def test_reported_t_values(self, published_summaries, metric, pair, expected):
        rows = published_summaries[metric]
        result = t_test(rows[pair[0]], rows[pair[1]], 0.01)
        assert abs(result.t_value) == pytest.approx(expected, abs=0.01)
        assert result.df == 158
        assert result.critical_t == pytest.approx(2.6073, abs=0.0005)

    @pytest.mark.parametrize('metric, pair, computed, reported', DEVIATING_T)
    def test_deviating_reported_t_values(self, published_summaries, metric, pair, computed, reported):
        rows = published_summaries[metric]
        result = t_test(rows[pair[0]], rows[pair[1]], 0.01)
        assert abs(result.t_value) == pytest.approx(computed, abs=0.005)
        assert abs(abs(result.t_value) - reported) > 0.01
        # the significance verdict is the same either way
        assert result.significant

    def test_share_standard_vs_stochastic_not_significant(self, published_summaries):
        # the published |t| for this pair does not follow from its rows; both agree it is not significant
        rows = published_summaries['exposure_share']
        result = t_test(rows['standard'], rows['stochastic'], 0.01)
        assert not result.significant
        assert abs(result.t_value) == pytest.approx(1.119, abs=0.01)

    def test_disparity_standard_vs_representative_significant(self, published_summaries):
        rows = published_summaries['exposure_disparity']
        result = t_test(rows['standard'], rows['representative'])
        assert result.significant
        assert result.p_value < 1e-10

    def test_identical_summaries(self):
        row = SummaryStats(n=80, mean=0.3, std=0.1)
        result = t_test(row, row)
        assert result.t_value == 0.0
        assert not result.significant
        assert result.p_value == pytest.approx(1.0)

    @pytest.mark.parametrize('scale', [0.001, 0.5, 3.0, 1000.0])
    def test_t_invariant_to_common_scale(self, scale):
        a = SummaryStats(n=40, mean=0.31, std=0.12)
        b = SummaryStats(n=40, mean=0.24, std=0.09)
        scaled_a = SummaryStats(n=40, mean=a.mean * scale, std=a.std * scale)
        scaled_b = SummaryStats(n=40, mean=b.mean * scale, std=b.std * scale)
        base, scaled = t_test(a, b), t_test(scaled_a, scaled_b)
        assert scaled.t_value == pytest.approx(base.t_value, rel=1e-9)
        assert scaled.significant == base.significant

    def test_sign_follows_first_argument(self):
        low = SummaryStats(n=10, mean=0.1, std=0.1)
        high = SummaryStats(n=10, mean=0.5, std=0.1)
        assert t_test(low, high).t_value < 0 < t_test(high, low).t_value

    def test_unequal_n(self):
        with pytest.raises(UnequalNError):
            t_test(SummaryStats(80, 0.1, 0.1), SummaryStats(79, 0.1, 0.1))

    def test_zero_variance_both_groups(self):
        with pytest.raises(DegenerateVarianceError):
            t_test(SummaryStats(80, 0.1, 0.0), SummaryStats(80, 0.2, 0.0))
