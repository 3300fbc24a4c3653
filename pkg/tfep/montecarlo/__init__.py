"""
Reproducible simulation studies.

Usage:
    from tfep.montecarlo import load_config, run_study

    result = run_study(load_config("experiments/configs/coverage_pareto.yaml"))
"""

from tfep.montecarlo.config import StudyConfig, load_config, save_config
from tfep.montecarlo.runner import (
    coverage_experiment,
    one_sample_rows,
    run_one_sample_study,
    run_study,
    run_two_sample_study,
    true_value,
    two_sample_rows,
)
from tfep.montecarlo.schema import CoverageResult, OneSampleRow, StudyResult, TwoSampleRow

__all__ = [
    "CoverageResult",
    "OneSampleRow",
    "StudyConfig",
    "StudyResult",
    "TwoSampleRow",
    "coverage_experiment",
    "load_config",
    "one_sample_rows",
    "run_one_sample_study",
    "run_study",
    "run_two_sample_study",
    "save_config",
    "true_value",
    "two_sample_rows",
]
