"""
Distribution families, random streams and population trimmed moments.

Usage:
    from tfep.distributions import Seed, parse_distribution, sample

    spec = parse_distribution("pareto:1,1.5")
    x = sample(spec, 10000, Seed(master=42))
"""

from tfep.distributions.families import (
    Cauchy,
    Distribution,
    DistributionSpec,
    Lognormal,
    Normal,
    Pareto,
    Student,
    cdf,
    coerce_distribution,
    parse_distribution,
    quantile,
    sample,
)
from tfep.distributions.oracle import (
    PopulationTrimmedMoments,
    normal_trimmed_variance,
    pareto_trimmed_mean,
    population_trimmed_moments,
)
from tfep.distributions.seeds import Seed, resolve_master_seed

__all__ = [
    "Cauchy",
    "Distribution",
    "DistributionSpec",
    "Lognormal",
    "Normal",
    "Pareto",
    "PopulationTrimmedMoments",
    "Seed",
    "Student",
    "cdf",
    "coerce_distribution",
    "normal_trimmed_variance",
    "pareto_trimmed_mean",
    "parse_distribution",
    "population_trimmed_moments",
    "quantile",
    "resolve_master_seed",
    "sample",
]
