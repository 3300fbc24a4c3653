"""Tests for trimmed moments and diagnostics."""

import math

import numpy as np
import pytest
from scipy import stats

from tfep.distributions import Lognormal, Normal, Seed, sample
from tfep.errors import DataError, DegenerateError, DomainError
from tfep.estimators import (
    central_moment,
    clipped_sample,
    diagnostics,
    summarize,
    t_squared,
    trimmed_mean,
    trimmed_variance,
)
from tfep.inference import classical_statistics
from tfep.trimming import TrimSpec, TrimmedView, sort_and_trim


def view_of(values, tau: float = 0.0) -> TrimmedView:
    return sort_and_trim(values, TrimSpec.symmetric(tau))


def naive_moments(values: list[float], tau: float) -> tuple[float, float, float]:
    """Sort, slice and sum in plain Python."""
    n = len(values)
    k = math.floor(tau * n + 1e-9)
    kept = sorted(values)[k : n - k]
    m = len(kept)
    mean = sum(kept) / m
    var = sum((x - mean) ** 2 for x in kept) / (m - 1)
    m4 = sum((x - mean) ** 4 for x in kept) / m
    return mean, var, m4


class TestTrimmedMean:
    def test_hand_example(self):
        assert trimmed_mean(view_of([2.0, 3.0, 4.0])) == 3.0

    def test_normal_sample(self):
        values = sample(Normal(mu=3, sigma=2), 10000, Seed(master=20240101))
        assert trimmed_mean(view_of(values, 0.05)) == pytest.approx(3.0, abs=0.1)

    def test_location_equivariance(self):
        values = np.random.default_rng(3).standard_t(3, size=300)
        base = trimmed_mean(view_of(values, 0.1))
        for c in (-1e3, -2.5, 0.5, 7.0):
            assert trimmed_mean(view_of(values + c, 0.1)) == pytest.approx(base + c, abs=1e-12)


class TestTrimmedVariance:
    def test_hand_example(self):
        assert trimmed_variance(view_of([2.0, 3.0, 4.0])) == 1.0

    def test_constant(self):
        assert trimmed_variance(view_of([5.0] * 6)) == 0.0

    def test_normal_sample(self):
        values = sample(Normal(mu=3, sigma=2), 10000, Seed(master=20240101))
        assert trimmed_variance(view_of(values, 0.10)) == pytest.approx(1.7508, abs=0.15)

    def test_scale_equivariance(self):
        values = np.random.default_rng(4).lognormal(size=250)
        base = trimmed_variance(view_of(values, 0.05))
        for c in (0.01, 3.0, 1e4):
            scaled = trimmed_variance(view_of(c * values, 0.05))
            assert scaled == pytest.approx(c**2 * base, rel=1e-12)


class TestCentralMoment:
    def test_hand_examples(self):
        assert central_moment(view_of([-1.0, 1.0]), 2) == 1.0
        assert central_moment(view_of([-1.0, 0.0, 1.0]), 4) == pytest.approx(2 / 3)
        assert central_moment(view_of([2.0, 3.0, 4.0]), 3) == 0.0

    def test_unsupported_order(self):
        with pytest.raises(DomainError):
            central_moment(view_of([1.0, 2.0, 3.0]), 5)


class TestTSquared:
    def test_divisor_mismatch_is_degenerate(self):
        result = t_squared(view_of([-1.0, 1.0, -1.0, 1.0]))
        assert result.value == pytest.approx(1 - 16 / 9)
        assert result.degenerate

    def test_constant_is_degenerate(self):
        result = t_squared(view_of([2.0] * 5))
        assert result.value == 0.0
        assert result.degenerate

    def test_normal_full_sample(self):
        values = sample(Normal(), 100_000, Seed(master=8))
        result = t_squared(view_of(values))
        assert result.value == pytest.approx(2.0, abs=0.15)
        assert not result.degenerate


class TestSummarize:
    def test_fields_agree(self):
        view = view_of(np.random.default_rng(5).pareto(2.5, size=400) + 1, 0.1)
        s = summarize(view)
        assert s.mean == trimmed_mean(view)
        assert s.variance == trimmed_variance(view)
        assert s.m2 == pytest.approx(central_moment(view, 2), rel=1e-15)
        assert s.m4 == central_moment(view, 4)
        assert s.t_squared == t_squared(view).value
        assert s.variance == pytest.approx(s.m2 * s.n_tau / (s.n_tau - 1), rel=1e-14)
        assert s.m4 >= s.m2**2
        assert not s.degenerate

    def test_brute_force_equivalence(self):
        rng = np.random.default_rng(6)
        taus = (0.0, 0.05, 0.1, 0.2)
        for _ in range(500):
            n = int(rng.integers(5, 21))
            values = (rng.standard_t(2, size=n) * 10 ** rng.uniform(-2, 3)).tolist()
            tau = taus[int(rng.integers(len(taus)))]
            s = summarize(view_of(values, tau))
            mean, var, m4 = naive_moments(values, tau)
            scale = max(abs(v) for v in values)
            assert s.mean == pytest.approx(mean, rel=1e-12, abs=1e-12 * scale)
            assert s.variance == pytest.approx(var, rel=1e-12, abs=1e-300)
            assert s.m4 == pytest.approx(m4, rel=1e-12, abs=1e-300)
            assert s.t_squared == pytest.approx(m4 - var**2, rel=1e-9, abs=1e-12 * var**2)

    def test_untrimmed_equals_classical_bitwise(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            values = rng.lognormal(sigma=2, size=int(rng.integers(3, 300)))
            s = summarize(view_of(values))
            c = classical_statistics(values)
            assert (s.mean, s.variance, s.t_squared) == (c.mean, c.variance, c.t_squared)


class TestClippedSample:
    def test_edges_replace_trimmed_values(self):
        view = view_of(np.arange(10.0), 0.2)
        w = clipped_sample(view)
        assert w.tolist() == [2, 2, 2, 3, 4, 5, 6, 7, 7, 7]

    def test_untrimmed_is_sorted_sample(self):
        view = view_of([3.0, 1.0, 2.0])
        assert clipped_sample(view).tolist() == [1.0, 2.0, 3.0]


class TestDiagnostics:
    def test_symmetric_data(self):
        report = diagnostics([-2.0, -1.0, 0.0, 1.0, 2.0, -1.5, 1.5, 0.0])
        assert report.skewness == pytest.approx(0.0, abs=1e-15)
        assert report.median == 0.0

    def test_lognormal_profile(self):
        values = sample(Lognormal(mu=0, sigma=1), 2000, Seed(master=2000))
        report = diagnostics(values)
        assert report.jb_p_value < 1e-6
        assert report.skewness > 2
        assert report.kurtosis > 15

    def test_normal_passes(self):
        passed = 0
        for stream in range(100):
            report = diagnostics(sample(Normal(), 2000, Seed(master=31, stream=stream)))
            passed += report.jb_p_value > 0.001
        assert passed >= 99

    def test_normal_kurtosis(self):
        report = diagnostics(sample(Normal(), 2000, Seed(master=32)))
        assert report.kurtosis == pytest.approx(3.0, abs=0.4)

    def test_p_value_is_chi2_tail(self):
        values = np.random.default_rng(9).exponential(size=100)
        report = diagnostics(values)
        assert report.jb_p_value == pytest.approx(stats.chi2.sf(report.jb_statistic, 2))
        expected = report.n / 6 * (report.skewness**2 + (report.kurtosis - 3) ** 2 / 4)
        assert report.jb_statistic == pytest.approx(expected, rel=1e-10)

    def test_sd_divisor(self):
        values = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]
        assert diagnostics(values).sd == pytest.approx(np.std(values, ddof=1))

    def test_row_order(self):
        row = diagnostics(np.arange(10.0)).to_row()
        assert list(row) == ["n", "mean", "median", "sd", "skewness", "kurtosis", "jb_p_value"]

    def test_too_short(self):
        with pytest.raises(DataError, match="at least 8"):
            diagnostics([1.0, 2.0, 3.0])

    def test_constant(self):
        with pytest.raises(DegenerateError):
            diagnostics([4.0] * 10)
