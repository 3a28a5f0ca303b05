"""
Statistics
Descriptive summaries, z-score outliers and the equal-n independent t-test
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special

from config.config import STATS_CONFIG
from fairrank.exceptions import (
    DegenerateVarianceError, StatsError, TooFewSamplesError, UnequalNError, UnsupportedAlphaError
)

SUPPORTED_ALPHA_LEVELS = tuple(STATS_CONFIG['supported_alpha_levels'])


@dataclass(frozen=True)
class SummaryStats:
    n: int
    mean: float
    std: float
    outlier_count: int = 0


@dataclass(frozen=True)
class TTestResult:
    t_value: float
    df: int
    critical_t: float
    significant: bool
    p_value: float


def summarize(samples: Sequence[float], z_threshold: float = STATS_CONFIG['z_threshold']) -> SummaryStats:
    """
    Mean, Bessel-corrected std and the number of |z| > z_threshold samples

    Raises:
        TooFewSamplesError: fewer than two samples
    """
    values = np.asarray(samples, dtype=float)
    if values.size < 2:
        raise TooFewSamplesError(f"need at least 2 samples, got {values.size}")
    mean = float(values.mean())
    std = float(values.std(ddof=1))
    outliers = 0
    if std > 0:
        outliers = int(np.count_nonzero(np.abs((values - mean) / std) > z_threshold))
    return SummaryStats(n=int(values.size), mean=mean, std=std, outlier_count=outliers)


def critical_t(df: int, alpha_level: float = STATS_CONFIG['alpha_level']) -> float:
    """
    Two-tailed Student-t critical value

    Inverts the regularized incomplete beta: P(|T| > t) = I_{df/(df+t^2)}(df/2, 1/2).
    """
    if df < 1:
        raise StatsError(f"degrees of freedom must be >= 1, got {df}")
    if not any(math.isclose(alpha_level, a) for a in SUPPORTED_ALPHA_LEVELS):
        raise UnsupportedAlphaError(
            f"alpha level {alpha_level} not supported; use one of {SUPPORTED_ALPHA_LEVELS}"
        )
    x = float(special.betaincinv(df / 2.0, 0.5, alpha_level))
    return math.sqrt(df * (1.0 - x) / x)


def t_test(a: SummaryStats, b: SummaryStats, alpha_level: float = STATS_CONFIG['alpha_level']) -> TTestResult:
    """
    Independent two-sample t-test for equal group sizes

    t = (mean_a - mean_b) / sqrt((std_a^2 + std_b^2) / n), df = 2n - 2.

    Raises:
        UnequalNError, DegenerateVarianceError, UnsupportedAlphaError
    """
    if a.n != b.n:
        raise UnequalNError(f"t-test needs equal group sizes, got {a.n} and {b.n}")
    if a.std == 0 and b.std == 0:
        raise DegenerateVarianceError("both groups have zero variance")

    n = a.n
    df = 2 * n - 2
    t_value = (a.mean - b.mean) / math.sqrt((a.std ** 2 + b.std ** 2) / n)
    critical = critical_t(df, alpha_level)
    p_value = float(2.0 * special.stdtr(df, -abs(t_value)))
    return TTestResult(
        t_value=t_value,
        df=df,
        critical_t=critical,
        significant=abs(t_value) > critical,
        p_value=p_value
    )
