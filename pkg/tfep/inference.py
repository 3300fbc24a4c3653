"""
Asymptotic confidence intervals for trimmed moments.

One-sample intervals for the trimmed mean and variance, two-sample intervals
for the mean difference and the variance ratio, and the classical untrimmed
versions they reduce to at tau = 0.

Three scaling modes set the standard errors:

    paper-literal     plug-ins S^2 and T^2 = m4 - S^4; in the variance ratio
                      T^2_i enter unnormalized.
    delta-corrected   plug-ins S^2 and T^2; the variance-ratio terms are the
                      delta-method variances of u/v (the default).
    influence         S^2 and T^2 replaced by the variances of the trimmed
                      functionals' influence functions, estimated from the
                      clipped sample W (see estimators.clipped_sample):
                          v = Var(W) n / n_tau
                          u = Var((W - mean_tau)^2) n / n_tau
                      These include the order-statistic term the plug-ins
                      omit, and coincide with them at tau = 0.

For mean, variance and mean-difference intervals paper-literal and
delta-corrected are the same.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy import special

from tfep.errors import DataError, DegenerateError, DomainError, UsageError
from tfep.estimators import clipped_sample, summarize
from tfep.trimming import TrimmedView, as_finite_sample

ScalingMode = Literal["delta-corrected", "paper-literal", "influence"]
IntervalShape = Literal["symmetric", "log"]
Target = Literal["mean", "variance", "mean-difference", "variance-ratio"]
Method = Literal["fep", "tfep"]

SCALING_MODES: tuple[str, ...] = ("delta-corrected", "paper-literal", "influence")
_SCALING_ALIASES = {"delta": "delta-corrected", "paper": "paper-literal"}

NEGATIVE_LOWER_WARNING = "negative-lower-bound"


def parse_scaling_mode(text: str) -> ScalingMode:
    """Accept a scaling mode or its short CLI alias (delta, paper)."""
    mode = _SCALING_ALIASES.get(text, text)
    if mode not in SCALING_MODES:
        known = ", ".join(SCALING_MODES)
        raise UsageError(f"Unknown scaling mode {text!r}; expected one of {known}")
    return mode  # type: ignore[return-value]


def z_quantile(p: float) -> float:
    """
    Standard normal quantile.

    Raises:
        DomainError: If p is outside (0, 1).
    """
    if not 0 < p < 1:
        raise DomainError(f"p must lie strictly inside (0, 1), got {p}")
    return float(special.ndtri(p))


def _critical_value(alpha: float) -> float:
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie strictly inside (0, 1), got {alpha}")
    return z_quantile(1 - alpha / 2)


class ConfidenceInterval(BaseModel):
    """An asymptotic interval with enough context to reproduce it."""

    model_config = ConfigDict(frozen=True)

    target: Target
    method: Method
    scaling_mode: ScalingMode
    interval_shape: IntervalShape = "symmetric"
    estimate: float
    lower: float
    upper: float
    level: float
    n_tau: int | None = None
    n1_tau: int | None = None
    n2_tau: int | None = None
    warnings: tuple[str, ...] = ()

    @model_validator(mode="after")
    def _check_bounds(self) -> "ConfidenceInterval":
        if not 0 < self.level < 1:
            raise ValueError(f"level must lie in (0, 1), got {self.level}")
        if not self.lower <= self.estimate <= self.upper:
            raise ValueError(
                f"Interval [{self.lower}, {self.upper}] does not contain estimate {self.estimate}"
            )
        return self

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def to_row(self) -> dict[str, float]:
        """Level, Estimate, CI-low, CI-high, Width."""
        return {
            "level": self.level,
            "estimate": self.estimate,
            "lower": self.lower,
            "upper": self.upper,
            "width": self.width,
        }


def _method(*views: TrimmedView) -> Method:
    return "fep" if all(v.is_untrimmed for v in views) else "tfep"


def _symmetric(
    estimate: float, half_width: float, alpha: float, nonnegative: bool, **fields
) -> ConfidenceInterval:
    lower = estimate - half_width
    upper = estimate + half_width
    warnings = (NEGATIVE_LOWER_WARNING,) if nonnegative and lower < 0 else ()
    return ConfidenceInterval(
        estimate=estimate, lower=lower, upper=upper, level=1 - alpha, warnings=warnings, **fields
    )


# Per-sample variance terms


@dataclass(frozen=True)
class _SampleTerms:
    """
    What one sample contributes to a standard error.

    v scales the mean (Var(mean) ~ v / n_tau); u scales the variance
    (Var(S^2) ~ u / n_tau).
    """

    mean: float
    variance: float
    v: float
    u: float
    n_tau: int
    u_degenerate: bool


def _sum_sq_dev(values: np.ndarray, center: float) -> float:
    return math.fsum(np.square(values - center).tolist())


def _sample_terms(view: TrimmedView, mode: ScalingMode) -> _SampleTerms:
    s = summarize(view)
    if mode != "influence":
        return _SampleTerms(s.mean, s.variance, s.variance, s.t_squared, s.n_tau, s.degenerate)

    w = clipped_sample(view)
    n = len(w)
    w_mean = math.fsum(w.tolist()) / n
    v = _sum_sq_dev(w, w_mean) / (n - 1) * n / s.n_tau

    g = np.square(w - s.mean)
    g_mean = math.fsum(g.tolist()) / n
    u = _sum_sq_dev(g, g_mean) / s.n_tau
    return _SampleTerms(s.mean, s.variance, v, u, s.n_tau, u <= 0 or s.n_tau < 3)


def _require_positive_variance(terms: _SampleTerms, which: str = "") -> None:
    if terms.variance <= 0 or terms.v <= 0:
        raise DegenerateError(
            f"Trimmed variance{which} is zero; all retained values are equal, no interval exists"
        )


def _require_u(terms: _SampleTerms, which: str = "") -> None:
    if terms.u_degenerate:
        raise DegenerateError(
            f"Variance of the trimmed variance{which} is not positive "
            f"(n_tau={terms.n_tau}); use a larger sample or less trimming"
        )


# One sample


def one_sample_mean_ci(
    view: TrimmedView, alpha: float = 0.05, scaling_mode: ScalingMode = "delta-corrected"
) -> ConfidenceInterval:
    """
    Interval for the trimmed mean: mean_tau +/- z * SE.

    SE is S / sqrt(n_tau) in the plug-in modes.

    Raises:
        DegenerateError: If the retained values are all equal.
    """
    z = _critical_value(alpha)
    terms = _sample_terms(view, scaling_mode)
    _require_positive_variance(terms)
    return _symmetric(
        terms.mean,
        z * math.sqrt(terms.v / terms.n_tau),
        alpha,
        nonnegative=False,
        target="mean",
        method=_method(view),
        scaling_mode=scaling_mode,
        n_tau=terms.n_tau,
    )


def one_sample_variance_ci(
    view: TrimmedView, alpha: float = 0.05, scaling_mode: ScalingMode = "delta-corrected"
) -> ConfidenceInterval:
    """
    Interval for the trimmed variance: S^2 +/- z * T / sqrt(n_tau).

    The lower bound is not clamped at 0; a negative one is flagged in
    warnings.

    Raises:
        DegenerateError: If T^2 (or its influence counterpart) is not positive.
    """
    z = _critical_value(alpha)
    terms = _sample_terms(view, scaling_mode)
    _require_positive_variance(terms)
    _require_u(terms)
    return _symmetric(
        terms.variance,
        z * math.sqrt(terms.u / terms.n_tau),
        alpha,
        nonnegative=True,
        target="variance",
        method=_method(view),
        scaling_mode=scaling_mode,
        n_tau=terms.n_tau,
    )


# Two samples


class TwoSampleScaling(BaseModel):
    """
    Combined two-sample scaling factors.

    a_hat = sqrt(n1 n2 / (n1 t2_sq + n2 t1_sq)) standardizes the variance
    ratio; b_hat = sqrt(n1 n2 / (n1 v2 + n2 v1)) the mean difference, with
    n1, n2 the effective sizes.
    """

    model_config = ConfigDict(frozen=True)

    a_hat: float
    b_hat: float
    t1_sq: float
    t2_sq: float
    v1: float
    v2: float
    mode: ScalingMode


def _b_hat(t1: _SampleTerms, t2: _SampleTerms) -> float:
    n1, n2 = t1.n_tau, t2.n_tau
    return math.sqrt(n1 * n2 / (n1 * t2.v + n2 * t1.v))


def _ratio_terms(t1: _SampleTerms, t2: _SampleTerms, mode: ScalingMode) -> tuple[float, float]:
    if mode == "paper-literal":
        return t1.u, t2.u
    s1_4 = t1.variance**2
    s2_4 = t2.variance**2
    return t1.u / s2_4, s1_4 * t2.u / s2_4**2


def _scaling(t1: _SampleTerms, t2: _SampleTerms, mode: ScalingMode) -> TwoSampleScaling:
    _require_positive_variance(t1, " of sample 1")
    _require_positive_variance(t2, " of sample 2")
    _require_u(t1, " of sample 1")
    _require_u(t2, " of sample 2")

    t1_sq, t2_sq = _ratio_terms(t1, t2, mode)
    if t1_sq <= 0 or t2_sq <= 0 or not math.isfinite(t1_sq + t2_sq):
        raise DegenerateError(f"Degenerate variance-ratio scaling: t1_sq={t1_sq}, t2_sq={t2_sq}")

    n1, n2 = t1.n_tau, t2.n_tau
    return TwoSampleScaling(
        a_hat=math.sqrt(n1 * n2 / (n1 * t2_sq + n2 * t1_sq)),
        b_hat=_b_hat(t1, t2),
        t1_sq=t1_sq,
        t2_sq=t2_sq,
        v1=t1.v,
        v2=t2.v,
        mode=mode,
    )


def two_sample_scalings(
    view1: TrimmedView, view2: TrimmedView, mode: ScalingMode = "delta-corrected"
) -> TwoSampleScaling:
    """
    Scaling factors a_hat and b_hat for two independent trimmed samples.

    delta-corrected: t1_sq = (m4_1 - S1^4) / S2^4, t2_sq = S1^4 (m4_2 - S2^4) / S2^8.
    paper-literal:   t1_sq = m4_1 - S1^4,          t2_sq = m4_2 - S2^4.
    influence:       the delta-corrected form with T^2_i replaced by u_i.

    Raises:
        DegenerateError: On zero variance or non-positive t1_sq / t2_sq.
    """
    return _scaling(_sample_terms(view1, mode), _sample_terms(view2, mode), mode)


def two_sample_mean_diff_ci(
    view1: TrimmedView,
    view2: TrimmedView,
    alpha: float = 0.05,
    scaling_mode: ScalingMode = "delta-corrected",
) -> ConfidenceInterval:
    """
    Interval for mean_tau,1 - mean_tau,2: estimate +/- z / b_hat.

    Raises:
        DegenerateError: If either sample has zero trimmed variance.
    """
    z = _critical_value(alpha)
    t1 = _sample_terms(view1, scaling_mode)
    t2 = _sample_terms(view2, scaling_mode)
    _require_positive_variance(t1, " of sample 1")
    _require_positive_variance(t2, " of sample 2")
    return _symmetric(
        t1.mean - t2.mean,
        z / _b_hat(t1, t2),
        alpha,
        nonnegative=False,
        target="mean-difference",
        method=_method(view1, view2),
        scaling_mode=scaling_mode,
        n1_tau=t1.n_tau,
        n2_tau=t2.n_tau,
    )


def two_sample_variance_ratio_ci(
    view1: TrimmedView,
    view2: TrimmedView,
    alpha: float = 0.05,
    scaling_mode: ScalingMode = "delta-corrected",
    interval_shape: IntervalShape = "symmetric",
) -> ConfidenceInterval:
    """
    Interval for S1^2 / S2^2: estimate +/- z / a_hat.

    With interval_shape="log" the same standard error is applied on the log
    scale instead (see two_sample_log_ratio_ci).

    Raises:
        DegenerateError: If S2^2 is zero or the scaling is degenerate.
    """
    if interval_shape == "log":
        return two_sample_log_ratio_ci(view1, view2, alpha, scaling_mode)

    z = _critical_value(alpha)
    t1 = _sample_terms(view1, scaling_mode)
    t2 = _sample_terms(view2, scaling_mode)
    scaling = _scaling(t1, t2, scaling_mode)
    return _symmetric(
        t1.variance / t2.variance,
        z / scaling.a_hat,
        alpha,
        nonnegative=True,
        target="variance-ratio",
        method=_method(view1, view2),
        scaling_mode=scaling_mode,
        n1_tau=t1.n_tau,
        n2_tau=t2.n_tau,
    )


def two_sample_log_ratio_ci(
    view1: TrimmedView,
    view2: TrimmedView,
    alpha: float = 0.05,
    scaling_mode: ScalingMode = "delta-corrected",
) -> ConfidenceInterval:
    """
    Variance-ratio interval built on the log scale: exp(log R +/- z / (a_hat R)).

    Always positive and symmetric about log R.
    """
    z = _critical_value(alpha)
    t1 = _sample_terms(view1, scaling_mode)
    t2 = _sample_terms(view2, scaling_mode)
    scaling = _scaling(t1, t2, scaling_mode)
    ratio = t1.variance / t2.variance
    half_log = z / (scaling.a_hat * ratio)
    return ConfidenceInterval(
        target="variance-ratio",
        method=_method(view1, view2),
        scaling_mode=scaling_mode,
        interval_shape="log",
        estimate=ratio,
        lower=ratio * math.exp(-half_log),
        upper=ratio * math.exp(half_log),
        level=1 - alpha,
        n1_tau=t1.n_tau,
        n2_tau=t2.n_tau,
    )


# Classical (untrimmed) statistics


@dataclass(frozen=True)
class ClassicalStatistics:
    """Sample mean, variance and T^2 of an untrimmed sample."""

    mean: float
    variance: float
    t_squared: float
    n: int


def classical_statistics(values: Sequence[float] | np.ndarray) -> ClassicalStatistics:
    """
    X-bar, S^2 (divisor n - 1) and T^2 = m4 - S^4 on the raw, unsorted sample.
    """
    arr = as_finite_sample(values)
    n = len(arr)
    if n < 2:
        raise DataError(f"Need at least 2 observations, got {n}")
    mean = math.fsum(arr.tolist()) / n
    d = arr - mean
    variance = math.fsum(np.power(d, 2).tolist()) / (n - 1)
    m4 = math.fsum(np.power(d, 4).tolist()) / n
    return ClassicalStatistics(mean=mean, variance=variance, t_squared=m4 - variance**2, n=n)


def classical_mean_ci(
    values: Sequence[float] | np.ndarray, alpha: float = 0.05
) -> ConfidenceInterval:
    """X-bar +/- z S / sqrt(n)."""
    z = _critical_value(alpha)
    stats = classical_statistics(values)
    n = stats.n
    if stats.variance <= 0:
        raise DegenerateError("Sample variance is zero; no interval exists")
    return _symmetric(
        stats.mean,
        z * math.sqrt(stats.variance / n),
        alpha,
        nonnegative=False,
        target="mean",
        method="fep",
        scaling_mode="delta-corrected",
        n_tau=n,
    )


def classical_variance_ci(
    values: Sequence[float] | np.ndarray, alpha: float = 0.05
) -> ConfidenceInterval:
    """S^2 +/- z T / sqrt(n)."""
    z = _critical_value(alpha)
    stats = classical_statistics(values)
    n = stats.n
    if stats.variance <= 0 or stats.t_squared <= 0 or n < 3:
        raise DegenerateError(f"T^2 = {stats.t_squared} is not positive; no interval exists")
    return _symmetric(
        stats.variance,
        z * math.sqrt(stats.t_squared / n),
        alpha,
        nonnegative=True,
        target="variance",
        method="fep",
        scaling_mode="delta-corrected",
        n_tau=n,
    )
