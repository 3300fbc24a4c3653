"""
Result schemas for simulation studies and applied analyses.

Rows mirror the layout of the published tables: one row per trimming level,
holding the intervals computed at that level.
"""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field

from tfep.inference import ConfidenceInterval, IntervalShape, ScalingMode, Target
from tfep.montecarlo.config import StudyConfig


class OneSampleRow(BaseModel):
    """Trimmed mean and variance intervals at one trimming level."""

    tau: float = Field(description="Trimming proportion")
    k_n: int | None = Field(default=None, description="Order statistics removed below")
    l_n: int | None = Field(default=None, description="Last retained order statistic")
    n_tau: int | None = Field(default=None, description="Effective sample size")
    mean_ci: ConfidenceInterval | None = None
    variance_ci: ConfidenceInterval | None = None
    error: str | None = Field(default=None, description="Why an interval is missing")


class TwoSampleRow(BaseModel):
    """Variance-ratio and mean-difference intervals at one trimming level."""

    tau: float = Field(description="Trimming proportion")
    n1_tau: int | None = None
    n2_tau: int | None = None
    ratio_ci: ConfidenceInterval | None = None
    mean_diff_ci: ConfidenceInterval | None = None
    error: str | None = Field(default=None, description="Why an interval is missing")


class CoverageResult(BaseModel):
    """Empirical coverage of one interval type at one trimming level."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    target: Target
    tau: float
    nominal: float = Field(description="1 - alpha")
    empirical_coverage: float = Field(ge=0.0, le=1.0, description="hits / replications")
    mean_width: float = Field(description="Average width over successful replications")
    replications: int = Field(ge=1)
    failures: int = Field(default=0, ge=0, description="Replications with no interval")
    true_value: float = Field(description="Population trimmed parameter; inf if it diverges")
    scaling_mode: ScalingMode = "delta-corrected"
    interval_shape: IntervalShape = "symmetric"

    @computed_field
    @property
    def coverage_se(self) -> float:
        """Binomial standard error of the empirical coverage."""
        p = self.empirical_coverage
        return math.sqrt(p * (1 - p) / self.replications)


class StudyResult(BaseModel):
    """A finished study or analysis, with everything needed to rerun it."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    kind: Literal["one-sample", "two-sample", "coverage"]
    source: str = Field(description="Where the data came from: distributions or files")
    master_seed: int | None = Field(
        default=None, description="Seed behind every random draw, if any"
    )
    config: StudyConfig | None = Field(default=None, description="Echo of the study config")
    rows: list[OneSampleRow | TwoSampleRow | CoverageResult] = Field(default_factory=list)

    @property
    def failed_rows(self) -> int:
        return sum(1 for row in self.rows if getattr(row, "error", None))
