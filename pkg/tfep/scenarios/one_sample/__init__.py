"""
One-sample scenarios: samples of n = 10000 from a single law, trimmed at
tau in {0, 0.05, 0.10, 0.20}.
"""

# Import all scenarios to register them
from tfep.scenarios.one_sample.skewed import (
    LognormalThreeTwo,
    LognormalZeroOne,
    ParetoOnePointFive,
    ParetoThree,
    ParetoTwoPointFive,
)
from tfep.scenarios.one_sample.symmetric import (
    NormalBenchmark,
    ShiftedStudentFive,
    ShiftedStudentOne,
    ShiftedStudentThree,
    ShiftedStudentTwo,
)

__all__ = [
    "NormalBenchmark",
    "ShiftedStudentOne",
    "ShiftedStudentTwo",
    "ShiftedStudentThree",
    "ShiftedStudentFive",
    "ParetoOnePointFive",
    "ParetoTwoPointFive",
    "ParetoThree",
    "LognormalZeroOne",
    "LognormalThreeTwo",
]
