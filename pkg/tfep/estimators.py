"""
Sample trimmed moments and distributional diagnostics.

All moment sums go through math.fsum, which is exactly rounded and therefore
independent of summation order: the untrimmed path on raw data and the
trimmed path on a sorted tau = 0 view give bit-identical results.

Divisors:
    trimmed_variance     n_tau - 1
    central_moment       n_tau
    t_squared            m4 - (S^2)^2, which mixes the two
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import stats

from tfep.errors import DataError, DegenerateError, DomainError
from tfep.trimming import TrimmedView, as_finite_sample

MIN_DIAGNOSTICS_N = 8


def _fsum_mean(values: np.ndarray) -> float:
    return math.fsum(values.tolist()) / len(values)


def _power_sum(deviations: np.ndarray, k: int) -> float:
    return math.fsum(np.power(deviations, k).tolist())


def trimmed_mean(view: TrimmedView) -> float:
    """Arithmetic mean of the retained order statistics."""
    return _fsum_mean(view.retained)


def trimmed_variance(view: TrimmedView) -> float:
    """
    Trimmed sample variance, divisor n_tau - 1.

    Returns 0 for constant retained data; interval builders treat that as
    degenerate.
    """
    d = view.retained - trimmed_mean(view)
    return _power_sum(d, 2) / (view.n_tau - 1)


def central_moment(view: TrimmedView, k: int) -> float:
    """
    Central moment of order k (2, 3 or 4) of the retained values, divisor n_tau.

    Raises:
        DomainError: For any other k.
    """
    if k not in (2, 3, 4):
        raise DomainError(f"Central moment order must be 2, 3 or 4, got {k}")
    d = view.retained - trimmed_mean(view)
    return _power_sum(d, k) / view.n_tau


@dataclass(frozen=True)
class TSquared:
    """The T^2 plug-in and whether it can scale an interval."""

    value: float
    degenerate: bool


def t_squared(view: TrimmedView) -> TSquared:
    """
    T^2 = m4 - (S^2)^2, the plug-in variance of the trimmed sample variance.

    Because m4 divides by n_tau and S^2 by n_tau - 1 the value can be
    non-positive for small n_tau; it is then returned tagged degenerate, as is
    any value computed from fewer than three retained observations.
    """
    value = central_moment(view, 4) - trimmed_variance(view) ** 2
    return TSquared(value=value, degenerate=value <= 0 or view.n_tau < 3)


class MomentSummary(BaseModel):
    """Trimmed moments of one sample."""

    model_config = ConfigDict(frozen=True)

    mean: float
    variance: float
    m2: float
    m3: float
    m4: float
    t_squared: float
    n_tau: int
    degenerate: bool


def summarize(view: TrimmedView) -> MomentSummary:
    """All trimmed moments of a view, from one set of deviations."""
    n_tau = view.n_tau
    mean = trimmed_mean(view)
    d = view.retained - mean
    s2 = _power_sum(d, 2)
    m2 = s2 / n_tau
    variance = s2 / (n_tau - 1)
    m4 = _power_sum(d, 4) / n_tau
    t2 = m4 - variance**2
    return MomentSummary(
        mean=mean,
        variance=variance,
        m2=m2,
        m3=_power_sum(d, 3) / n_tau,
        m4=m4,
        t_squared=t2,
        n_tau=n_tau,
        degenerate=variance == 0 or t2 <= 0 or n_tau < 3,
    )


def clipped_sample(view: TrimmedView) -> np.ndarray:
    """
    The full-length sample with trimmed values moved to the window edges.

    k_n copies of X_(k_n+1), the retained values, then n - l_n copies of
    X_(l_n). Its spread drives the influence-function standard errors.
    """
    return np.concatenate(
        [
            np.full(view.k_n, view.lower_bound),
            view.retained,
            np.full(view.n - view.l_n, view.upper_bound),
        ]
    )


class DiagnosticsReport(BaseModel):
    """Summary statistics and a Jarque-Bera normality test for one sample."""

    model_config = ConfigDict(frozen=True)

    csv_columns: ClassVar[tuple[str, ...]] = (
        "n",
        "mean",
        "median",
        "sd",
        "skewness",
        "kurtosis",
        "jb_p_value",
    )

    n: int
    mean: float
    median: float
    sd: float
    skewness: float
    kurtosis: float
    jb_statistic: float
    jb_p_value: float

    def to_row(self) -> dict[str, float | int]:
        """Values in CSV column order."""
        return {col: getattr(self, col) for col in self.csv_columns}


def diagnostics(values: Sequence[float] | np.ndarray) -> DiagnosticsReport:
    """
    Summary statistics of an untrimmed sample.

    Skewness is m3 / m2^(3/2) and kurtosis m4 / m2^2 (raw, so 3 for a normal
    law), both with divisor n; sd uses divisor n - 1. JB = n/6 (skew^2 +
    (kurt - 3)^2 / 4) with a chi-square(2) p-value.

    Raises:
        DataError: On non-finite values or fewer than 8 observations.
        DegenerateError: If the sample has zero variance.
    """
    arr = as_finite_sample(values)
    n = len(arr)
    if n < MIN_DIAGNOSTICS_N:
        raise DataError(f"Diagnostics need at least {MIN_DIAGNOSTICS_N} observations, got {n}")

    mean = _fsum_mean(arr)
    d = arr - mean
    m2 = _power_sum(d, 2) / n
    if m2 == 0:
        raise DegenerateError("Diagnostics undefined for a sample with zero variance")

    skewness = float(stats.skew(arr, bias=True))
    kurtosis = float(stats.kurtosis(arr, fisher=False, bias=True))
    jb = float(stats.jarque_bera(arr).statistic)
    return DiagnosticsReport(
        n=n,
        mean=mean,
        median=float(np.median(arr)),
        sd=math.sqrt(m2 * n / (n - 1)),
        skewness=skewness,
        kurtosis=kurtosis,
        jb_statistic=jb,
        jb_p_value=float(stats.chi2.sf(jb, 2)),
    )
