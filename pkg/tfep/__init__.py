"""
tfep - Trimmed-moment inference for heavy-tailed data.

Confidence intervals for trimmed means, trimmed variances, their
differences and ratios, valid when the untrimmed moments do not exist.
"""

__version__ = "0.1.0"

from tfep.base import Scenario
from tfep.estimators import diagnostics, summarize, trimmed_mean, trimmed_variance
from tfep.inference import (
    ConfidenceInterval,
    one_sample_mean_ci,
    one_sample_variance_ci,
    two_sample_mean_diff_ci,
    two_sample_variance_ratio_ci,
)
from tfep.trimming import TrimmedView, TrimSpec, sort_and_trim

__all__ = [
    "ConfidenceInterval",
    "Scenario",
    "TrimSpec",
    "TrimmedView",
    "__version__",
    "diagnostics",
    "one_sample_mean_ci",
    "one_sample_variance_ci",
    "sort_and_trim",
    "summarize",
    "trimmed_mean",
    "trimmed_variance",
    "two_sample_mean_diff_ci",
    "two_sample_variance_ratio_ci",
]
