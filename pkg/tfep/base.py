"""
Base class for published simulation scenarios.

Each scenario (one row block of a published results table) gets a class that
inherits from Scenario and declares its distributions, sample size, trimming
grid and the values printed for it.
"""

from dataclasses import dataclass
from typing import ClassVar

from pydantic import BaseModel, Field

from tfep.distributions import parse_distribution
from tfep.inference import ConfidenceInterval, IntervalShape, ScalingMode
from tfep.montecarlo.config import StudyConfig, StudyKind
from tfep.montecarlo.runner import run_study
from tfep.montecarlo.schema import OneSampleRow, StudyResult, TwoSampleRow


@dataclass(frozen=True)
class ReferenceRow:
    """
    Printed values at one trimming level.

    For one-sample scenarios ``first`` is the mean and ``second`` the
    variance; for two-sample scenarios they are the variance ratio and the
    mean difference.
    """

    first: float
    first_ci: tuple[float, float]
    second: float
    second_ci: tuple[float, float]


class ComparisonRow(BaseModel):
    """A printed value next to the one computed for the same cell."""

    tau: float
    quantity: str
    reference: float
    reference_lower: float
    reference_upper: float
    estimate: float | None = None
    lower: float | None = None
    upper: float | None = None

    @property
    def reference_in_interval(self) -> bool | None:
        """Whether the computed interval contains the printed estimate."""
        if self.lower is None or self.upper is None:
            return None
        return self.lower <= self.reference <= self.upper


class ScenarioComparison(BaseModel):
    """Output of Scenario.compare."""

    key: str
    title: str
    notes: str = ""
    master_seed: int | None = None
    rows: list[ComparisonRow] = Field(default_factory=list)


@dataclass
class Scenario:
    """
    Base class for a published scenario.

    Subclass this for each row block. Distributions are given in text form.

    Example:
        class ParetoOnePointFive(Scenario):
            key = "pareto-1-1.5"
            title = "Pareto(1,1.5)"
            dist1 = "pareto:1,1.5"

            reference = {
                0.10: ReferenceRow(1.89, (1.88, 1.90), 0.67, (0.65, 0.68)),
            }
    """

    # Class-level attributes (override in subclass)
    key: ClassVar[str] = ""
    title: ClassVar[str] = ""
    kind: ClassVar[StudyKind] = "one-sample"
    dist1: ClassVar[str] = ""
    dist2: ClassVar[str | None] = None
    n: ClassVar[int] = 10000
    tau_grid: ClassVar[list[float]] = [0.0, 0.05, 0.10, 0.20]
    interval_shape: ClassVar[IntervalShape] = "symmetric"
    notes: ClassVar[str] = ""  # Known quirks of the printed values

    # Printed values by trimming level (override in subclass)
    reference: ClassVar[dict[float, ReferenceRow]] = {}

    def build_config(
        self,
        master_seed: int | None = None,
        n: int | None = None,
        scaling_mode: ScalingMode = "delta-corrected",
        alpha: float = 0.05,
    ) -> StudyConfig:
        """
        Study config reproducing this scenario.

        Args:
            master_seed: Seed for the draws; None resolves TFEP_SEED or the default.
            n: Override of the sample size (both samples).
            scaling_mode: Standard-error scaling.
            alpha: 1 - confidence level.
        """
        size = n or self.n
        data = {
            "name": self.key,
            "kind": self.kind,
            "dist1": parse_distribution(self.dist1),
            "n1": size,
            "tau_grid": list(self.tau_grid),
            "alpha": alpha,
            "scaling_mode": scaling_mode,
            "interval_shape": self.interval_shape,
        }
        if self.dist2 is not None:
            data["dist2"] = parse_distribution(self.dist2)
            data["n2"] = size
        if master_seed is not None:
            data["master_seed"] = master_seed
        return StudyConfig.create(**data)

    def run(self, master_seed: int | None = None, **overrides) -> StudyResult:
        """Run the scenario's study."""
        return run_study(self.build_config(master_seed, **overrides))

    def compare(self, result: StudyResult) -> ScenarioComparison:
        """
        Pair every printed value with the computed one at the same level.

        Levels without printed values are skipped.
        """
        if self.kind == "one-sample":
            names = ("mean", "variance")
        else:
            names = ("variance-ratio", "mean-difference")
        rows = []
        for row in result.rows:
            ref = self.reference.get(row.tau)
            if ref is None:
                continue
            computed = _row_intervals(row)
            printed = ((ref.first, ref.first_ci), (ref.second, ref.second_ci))
            for name, (value, (lo, hi)), ci in zip(names, printed, computed, strict=True):
                rows.append(
                    ComparisonRow(
                        tau=row.tau,
                        quantity=name,
                        reference=value,
                        reference_lower=lo,
                        reference_upper=hi,
                        estimate=None if ci is None else ci.estimate,
                        lower=None if ci is None else ci.lower,
                        upper=None if ci is None else ci.upper,
                    )
                )
        return ScenarioComparison(
            key=self.key,
            title=self.title,
            notes=self.notes.strip(),
            master_seed=result.master_seed,
            rows=rows,
        )

    def describe(self) -> dict:
        """Summary for listings."""
        return {
            "key": self.key,
            "title": self.title,
            "kind": self.kind,
            "dist1": self.dist1,
            "dist2": self.dist2,
            "n": self.n,
            "tau_grid": list(self.tau_grid),
            "interval_shape": self.interval_shape,
            "reference_levels": sorted(self.reference),
        }

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(key={self.key!r}, title={self.title!r})"


def _row_intervals(
    row: OneSampleRow | TwoSampleRow,
) -> tuple[ConfidenceInterval | None, ConfidenceInterval | None]:
    if isinstance(row, OneSampleRow):
        return row.mean_ci, row.variance_ci
    return row.ratio_ci, row.mean_diff_ci
