"""
Two-sample scenarios: independent samples with n1 = n2 = 10000, trimmed at
tau in {0, 0.05, 0.10, 0.20}. Printed ratio intervals are symmetric on the
log scale, so these presets use interval_shape="log".
"""

# Import all scenarios to register them
from tfep.scenarios.two_sample.skewed import (
    LognormalPair,
    ParetoHeavyPair,
    ParetoLightPair,
)
from tfep.scenarios.two_sample.symmetric import (
    NormalPair,
    StudentHeavyPair,
    StudentLightPair,
)

__all__ = [
    "NormalPair",
    "StudentHeavyPair",
    "StudentLightPair",
    "ParetoHeavyPair",
    "ParetoLightPair",
    "LognormalPair",
]
