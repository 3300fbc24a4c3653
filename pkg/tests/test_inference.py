"""Tests for one- and two-sample confidence intervals."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from tfep.distributions import (
    Normal,
    Pareto,
    Seed,
    population_trimmed_moments,
    sample,
)
from tfep.errors import DegenerateError, DomainError, UsageError
from tfep.estimators import summarize
from tfep.inference import (
    NEGATIVE_LOWER_WARNING,
    ConfidenceInterval,
    classical_mean_ci,
    classical_variance_ci,
    one_sample_mean_ci,
    one_sample_variance_ci,
    parse_scaling_mode,
    two_sample_log_ratio_ci,
    two_sample_mean_diff_ci,
    two_sample_scalings,
    two_sample_variance_ratio_ci,
    z_quantile,
)
from tfep.trimming import TrimSpec, sort_and_trim


def view_of(values, tau: float = 0.0):
    return sort_and_trim(values, TrimSpec.symmetric(tau))


@pytest.fixture
def pair():
    rng = np.random.default_rng(11)
    return rng.standard_t(4, size=500) * 2 + 1, rng.standard_t(6, size=400)


class TestZQuantile:
    def test_known_values(self):
        assert z_quantile(0.5) == 0.0
        assert z_quantile(0.975) == pytest.approx(1.959964, abs=1e-6)
        assert z_quantile(0.995) == pytest.approx(2.575829, abs=1e-6)

    def test_symmetry(self):
        assert z_quantile(0.1) == pytest.approx(-z_quantile(0.9), rel=1e-14)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.2, 1.5])
    def test_out_of_range(self, p):
        with pytest.raises(DomainError):
            z_quantile(p)

    def test_alpha_out_of_range(self):
        with pytest.raises(DomainError):
            one_sample_mean_ci(view_of([1.0, 2.0, 3.0]), alpha=1.0)


class TestScalingMode:
    def test_aliases(self):
        assert parse_scaling_mode("delta") == "delta-corrected"
        assert parse_scaling_mode("paper") == "paper-literal"
        assert parse_scaling_mode("influence") == "influence"

    def test_unknown(self):
        with pytest.raises(UsageError, match="Unknown scaling mode"):
            parse_scaling_mode("bootstrap")


class TestConfidenceInterval:
    def test_width_and_contains(self):
        ci = ConfidenceInterval(
            target="mean",
            method="tfep",
            scaling_mode="delta-corrected",
            estimate=1.0,
            lower=0.5,
            upper=2.0,
            level=0.95,
        )
        assert ci.width == 1.5
        assert ci.contains(0.5)
        assert not ci.contains(2.1)
        assert list(ci.to_row()) == ["level", "estimate", "lower", "upper", "width"]

    def test_estimate_outside_bounds(self):
        with pytest.raises(ValidationError, match="does not contain"):
            ConfidenceInterval(
                target="mean",
                method="fep",
                scaling_mode="delta-corrected",
                estimate=3.0,
                lower=0.0,
                upper=1.0,
                level=0.95,
            )


class TestOneSample:
    def test_mean_hand_example(self):
        ci = one_sample_mean_ci(view_of([2.0, 3.0, 4.0]))
        assert ci.estimate == 3.0
        assert ci.lower == pytest.approx(1.8684, abs=1e-4)
        assert ci.upper == pytest.approx(4.1316, abs=1e-4)
        assert ci.method == "fep"
        assert ci.n_tau == 3

    def test_variance_negative_t_squared(self):
        with pytest.raises(DegenerateError, match="not positive"):
            one_sample_variance_ci(view_of([2.0, 3.0, 4.0]))

    def test_constant_sample(self):
        with pytest.raises(DegenerateError, match="all retained values are equal"):
            one_sample_mean_ci(view_of([5.0] * 10))

    def test_trimmed_method(self):
        ci = one_sample_mean_ci(view_of(np.arange(20.0), 0.1))
        assert ci.method == "tfep"
        assert ci.n_tau == 16

    def test_negative_lower_flagged(self):
        values = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 100.0]
        ci = one_sample_variance_ci(view_of(values))
        assert ci.lower < 0
        assert ci.warnings == (NEGATIVE_LOWER_WARNING,)

    def test_no_warning_for_mean(self):
        ci = one_sample_mean_ci(view_of([-5.0, -4.0, 1.0, 2.0]))
        assert ci.lower < 0
        assert ci.warnings == ()

    def test_level_follows_alpha(self):
        view = view_of(np.random.default_rng(1).normal(size=200), 0.05)
        narrow = one_sample_mean_ci(view, alpha=0.1)
        wide = one_sample_mean_ci(view, alpha=0.01)
        assert narrow.level == pytest.approx(0.9)
        assert wide.width > narrow.width
        assert wide.estimate == narrow.estimate

    def test_untrimmed_equals_classical_bitwise(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            values = rng.standard_t(5, size=int(rng.integers(30, 400)))
            view = view_of(values)
            assert one_sample_mean_ci(view) == classical_mean_ci(values)
            assert one_sample_variance_ci(view) == classical_variance_ci(values)

    def test_influence_untrimmed_mean_matches_classical(self):
        values = np.random.default_rng(13).exponential(size=300)
        influence = one_sample_mean_ci(view_of(values), scaling_mode="influence")
        classical = classical_mean_ci(values)
        assert influence.lower == pytest.approx(classical.lower, rel=1e-12)
        assert influence.upper == pytest.approx(classical.upper, rel=1e-12)

    def test_influence_is_wider_under_trimming(self):
        values = sample(Pareto(xm=1, alpha=1.5), 5000, Seed(master=14))
        view = view_of(values, 0.1)
        plug_in = one_sample_mean_ci(view)
        influence = one_sample_mean_ci(view, scaling_mode="influence")
        assert influence.estimate == plug_in.estimate
        assert influence.width > plug_in.width

    @pytest.mark.parametrize(
        ("spec", "tau"),
        [
            (Normal(mu=3, sigma=2), 0.05),
            (Normal(mu=3, sigma=2), 0.1),
            (Pareto(xm=1, alpha=1.5), 0.1),
            (Pareto(xm=1, alpha=1.5), 0.2),
            (Pareto(xm=1, alpha=3), 0.05),
        ],
    )
    def test_intervals_contain_population_values(self, spec, tau):
        truth = population_trimmed_moments(spec, tau)
        view = view_of(sample(spec, 20000, Seed(master=15)), tau)
        mean_ci = one_sample_mean_ci(view, alpha=1e-4, scaling_mode="influence")
        var_ci = one_sample_variance_ci(view, alpha=1e-4, scaling_mode="influence")
        assert mean_ci.contains(truth.mu_tau)
        assert var_ci.contains(truth.sigma2_tau)


class TestTwoSample:
    def test_identical_samples(self, pair):
        view = view_of(pair[0], 0.1)
        ratio = two_sample_variance_ratio_ci(view, view)
        diff = two_sample_mean_diff_ci(view, view)
        assert ratio.estimate == 1.0
        assert diff.estimate == 0.0
        assert diff.lower == pytest.approx(-diff.upper, rel=1e-14)
        assert ratio.upper - 1 == pytest.approx(1 - ratio.lower, rel=1e-12)

    def test_paper_literal_scaling(self, pair):
        v1, v2 = view_of(pair[0], 0.05), view_of(pair[1], 0.05)
        s1, s2 = summarize(v1), summarize(v2)
        scaling = two_sample_scalings(v1, v2, "paper-literal")
        assert scaling.t1_sq == s1.t_squared
        assert scaling.t2_sq == s2.t_squared
        n1, n2 = v1.n_tau, v2.n_tau
        expected = math.sqrt(n1 * n2 / (n1 * s2.t_squared + n2 * s1.t_squared))
        assert scaling.a_hat == pytest.approx(expected, rel=1e-14)

    def test_delta_corrected_scaling(self, pair):
        v1, v2 = view_of(pair[0], 0.05), view_of(pair[1], 0.05)
        s1, s2 = summarize(v1), summarize(v2)
        scaling = two_sample_scalings(v1, v2)
        assert scaling.t1_sq == pytest.approx(s1.t_squared / s2.variance**2, rel=1e-12)
        assert scaling.t2_sq == pytest.approx(
            s1.variance**2 * s2.t_squared / s2.variance**4, rel=1e-12
        )
        n1, n2 = v1.n_tau, v2.n_tau
        b_hat = math.sqrt(n1 * n2 / (n1 * s2.variance + n2 * s1.variance))
        assert scaling.b_hat == pytest.approx(b_hat, rel=1e-14)

    def test_ratio_scale_law(self, pair):
        v2 = view_of(pair[1], 0.1)
        base = two_sample_variance_ratio_ci(view_of(pair[0], 0.1), v2)
        for c in (0.1, 3.0, 50.0):
            scaled = two_sample_variance_ratio_ci(view_of(c * pair[0], 0.1), v2)
            assert scaled.estimate == pytest.approx(c**2 * base.estimate, rel=1e-10)
            assert scaled.lower == pytest.approx(c**2 * base.lower, rel=1e-10)
            assert scaled.upper == pytest.approx(c**2 * base.upper, rel=1e-10)

    def test_ratio_common_scale_invariance(self, pair):
        base = two_sample_variance_ratio_ci(view_of(pair[0], 0.1), view_of(pair[1], 0.1))
        scaled = two_sample_variance_ratio_ci(
            view_of(7 * pair[0], 0.1), view_of(7 * pair[1], 0.1)
        )
        assert scaled.lower == pytest.approx(base.lower, rel=1e-10)
        assert scaled.upper == pytest.approx(base.upper, rel=1e-10)

    def test_shift_law(self, pair):
        v2 = view_of(pair[1], 0.1)
        base_diff = two_sample_mean_diff_ci(view_of(pair[0], 0.1), v2)
        base_ratio = two_sample_variance_ratio_ci(view_of(pair[0], 0.1), v2)
        shifted = view_of(pair[0] + 12.5, 0.1)
        diff = two_sample_mean_diff_ci(shifted, v2)
        ratio = two_sample_variance_ratio_ci(shifted, v2)
        assert diff.lower == pytest.approx(base_diff.lower + 12.5, abs=1e-9)
        assert diff.upper == pytest.approx(base_diff.upper + 12.5, abs=1e-9)
        assert ratio.estimate == pytest.approx(base_ratio.estimate, rel=1e-9)
        assert ratio.width == pytest.approx(base_ratio.width, rel=1e-8)

    def test_log_interval(self, pair):
        v1, v2 = view_of(pair[0], 0.05), view_of(pair[1], 0.05)
        symmetric = two_sample_variance_ratio_ci(v1, v2)
        log = two_sample_log_ratio_ci(v1, v2)
        r = log.estimate
        assert log.interval_shape == "log"
        assert log.lower > 0
        assert math.log(log.upper / r) == pytest.approx(math.log(r / log.lower), rel=1e-12)
        half = (symmetric.upper - symmetric.lower) / 2
        assert math.log(log.upper / r) == pytest.approx(half / r, rel=1e-12)

    def test_log_shape_dispatch(self, pair):
        v1, v2 = view_of(pair[0]), view_of(pair[1])
        ci = two_sample_variance_ratio_ci(v1, v2, interval_shape="log")
        assert ci == two_sample_log_ratio_ci(v1, v2)

    def test_effective_sizes(self, pair):
        ci = two_sample_mean_diff_ci(view_of(pair[0], 0.1), view_of(pair[1], 0.1))
        assert (ci.n1_tau, ci.n2_tau) == (400, 320)
        assert ci.method == "tfep"

    def test_constant_second_sample(self, pair):
        with pytest.raises(DegenerateError, match="sample 2"):
            two_sample_variance_ratio_ci(view_of(pair[0]), view_of([1.0] * 20))

    def test_normal_pair_contains_truth(self):
        seed = Seed(master=16)
        x = sample(Normal(mu=3, sigma=2), 20000, seed)
        y = sample(Normal(), 20000, seed.with_substream(1))
        for tau in (0.0, 0.05, 0.1, 0.2):
            v1, v2 = view_of(x, tau), view_of(y, tau)
            ratio = two_sample_variance_ratio_ci(v1, v2, alpha=1e-4, scaling_mode="influence")
            diff = two_sample_mean_diff_ci(v1, v2, alpha=1e-4, scaling_mode="influence")
            assert ratio.contains(4.0)
            assert diff.contains(3.0)
