"""
Configuration models for simulation studies.

Uses Pydantic for validation and YAML for configuration files. Distribution
fields take either the text form ("pareto:1,1.5") or a mapping with a
``family`` key.
"""

from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from tfep.distributions import DistributionSpec, coerce_distribution, resolve_master_seed
from tfep.errors import ConfigurationError
from tfep.inference import IntervalShape, ScalingMode, Target
from tfep.trimming import TrimSpec

StudyKind = Literal["one-sample", "two-sample", "coverage"]
TrimModeName = Literal["symmetric", "lower", "upper"]

ONE_SAMPLE_TARGETS: tuple[Target, ...] = ("mean", "variance")
TWO_SAMPLE_TARGETS: tuple[Target, ...] = ("mean-difference", "variance-ratio")


class StudyConfig(BaseModel):
    """Complete description of one simulation study."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(default="", description="Label echoed in reports")
    kind: StudyKind = Field(description="one-sample, two-sample or coverage")
    dist1: DistributionSpec = Field(description="Law of the first sample")
    dist2: DistributionSpec | None = Field(
        default=None,
        description="Law of the second sample (two-sample studies and targets)",
    )
    n1: int = Field(default=10000, ge=2, description="Size of the first sample")
    n2: int | None = Field(default=None, ge=2, description="Size of the second sample")
    tau_grid: list[float] = Field(
        default_factory=lambda: [0.0, 0.05, 0.10, 0.20],
        min_length=1,
        description="Trimming proportions, strictly increasing",
    )
    alpha: float = Field(default=0.05, gt=0.0, lt=1.0, description="1 - confidence level")
    replications: int = Field(
        default=1,
        ge=1,
        description="Independent datasets; coverage studies only, tables use one run",
    )
    master_seed: int = Field(
        default_factory=resolve_master_seed,
        ge=0,
        lt=2**64,
        description="Seed every random stream of the study derives from",
    )
    scaling_mode: ScalingMode = Field(default="delta-corrected")
    trim_mode: TrimModeName = Field(default="symmetric")
    interval_shape: IntervalShape = Field(
        default="symmetric",
        description="Shape of variance-ratio intervals",
    )
    targets: list[Target] | None = Field(
        default=None,
        description="Coverage targets; defaults to the one- or two-sample pair",
    )
    workers: int = Field(default=1, ge=1, description="Processes for replications")

    @field_validator("dist1", "dist2", mode="before")
    @classmethod
    def parse_distribution_field(cls, v: Any) -> Any:
        """Accept the text form of a distribution."""
        return None if v is None else coerce_distribution(v)

    @field_validator("tau_grid")
    @classmethod
    def check_tau_grid(cls, v: list[float]) -> list[float]:
        for tau in v:
            if not 0 <= tau < 0.5:
                raise ValueError(f"tau must lie in [0, 0.5), got {tau}")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError(f"tau_grid must be strictly increasing, got {v}")
        return v

    @model_validator(mode="after")
    def check_kind(self) -> "StudyConfig":
        two_sample_targets = set(self.resolved_targets()) & set(TWO_SAMPLE_TARGETS)
        if self.kind == "two-sample" or (self.kind == "coverage" and two_sample_targets):
            if self.dist2 is None or self.n2 is None:
                raise ValueError(f"{self.kind} study with two-sample targets needs dist2 and n2")
        if self.kind != "coverage" and self.targets is not None:
            raise ValueError("targets only apply to coverage studies")
        return self

    @classmethod
    def create(cls, **data: Any) -> "StudyConfig":
        """
        Build a config, reporting validation failures as ConfigurationError.
        """
        try:
            return cls(**data)
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(p) for p in first["loc"]) or "config"
            raise ConfigurationError(f"Invalid study config ({where}): {first['msg']}") from e

    def resolved_targets(self) -> list[Target]:
        """Targets of a coverage study, filling in the default pair."""
        if self.targets is not None:
            return list(self.targets)
        if self.dist2 is not None:
            return list(TWO_SAMPLE_TARGETS)
        return list(ONE_SAMPLE_TARGETS)

    def needs_second_sample(self) -> bool:
        if self.kind == "two-sample":
            return True
        if self.kind == "coverage":
            return bool(set(self.resolved_targets()) & set(TWO_SAMPLE_TARGETS))
        return False

    def trim_spec(self, tau: float) -> TrimSpec:
        return TrimSpec(mode=self.trim_mode, tau=tau)


def load_config(path: str | Path) -> StudyConfig:
    """
    Load a study configuration from a YAML file.

    Args:
        path: Path to YAML configuration file.

    Returns:
        Validated StudyConfig object.

    Raises:
        ConfigurationError: If the file is missing or the config is invalid.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Config file not found: {path}")

    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)

    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {path} must hold a mapping")
    return StudyConfig.create(**data)


def save_config(config: StudyConfig, path: str | Path) -> None:
    """
    Save a study configuration to a YAML file.

    Distributions are written in their text form.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    data = config.model_dump(mode="json")
    data["dist1"] = config.dist1.to_text()
    if config.dist2 is not None:
        data["dist2"] = config.dist2.to_text()

    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(data, f, default_flow_style=False, sort_keys=False)
