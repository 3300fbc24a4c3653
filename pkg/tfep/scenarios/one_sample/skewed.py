"""
Skewed heavy-tailed laws: Pareto with tail index 1.5, 2.5 and 3, and two
lognormals.

The printed values match symmetric trimming (the population trimmed means
of Pareto(1,1.5) at 0.05, 0.10 and 0.20 are 2.049, 1.880 and 1.718), so
these scenarios trim both tails like every other preset.
"""

from tfep.base import ReferenceRow, Scenario


class ParetoOnePointFive(Scenario):
    key = "pareto-1-1.5"
    title = "Pareto(1,1.5)"
    dist1 = "pareto:1,1.5"

    notes = """
    Finite mean, infinite variance.

    Known quirks:
    - The upper variance bound at tau=0.20 is printed as 0.2, presumably
      truncated from 0.23.
    """

    reference = {
        0.00: ReferenceRow(3.00, (2.82, 3.18), 167.76, (20.89, 314.62)),
        0.05: ReferenceRow(2.06, (2.04, 2.07), 1.45, (1.40, 1.50)),
        0.10: ReferenceRow(1.89, (1.88, 1.90), 0.67, (0.65, 0.68)),
        0.20: ReferenceRow(1.73, (1.72, 1.73), 0.22, (0.21, 0.2)),
    }


class ParetoTwoPointFive(Scenario):
    key = "pareto-1-2.5"
    title = "Pareto(1,2.5)"
    dist1 = "pareto:1,2.5"

    notes = """
    Finite variance, infinite fourth moment.

    Known quirks:
    - The variance printed at tau=0.05 reads 0.23, outside its own interval
      [0.13, 0.14].
    """

    reference = {
        0.00: ReferenceRow(1.67, (1.65, 1.69), 1.93, (1.33, 2.53)),
        0.05: ReferenceRow(1.49, (1.49, 1.50), 0.23, (0.13, 0.14)),
        0.10: ReferenceRow(1.44, (1.43, 1.44), 0.13, (0.12, 0.13)),
        0.20: ReferenceRow(1.38, (1.37, 1.38), 0.05, (0.05, 0.05)),
    }


class ParetoThree(Scenario):
    key = "pareto-1-3"
    title = "Pareto(1,3)"
    dist1 = "pareto:1,3"

    reference = {
        0.00: ReferenceRow(1.50, (1.49, 1.51), 0.74, (0.58, 0.89)),
        0.05: ReferenceRow(1.39, (1.38, 1.39), 0.13, (0.13, 0.14)),
        0.10: ReferenceRow(1.35, (1.34, 1.35), 0.07, (0.07, 0.08)),
        0.20: ReferenceRow(1.30, (1.30, 1.31), 0.03, (0.03, 0.03)),
    }


class LognormalZeroOne(Scenario):
    key = "lognormal-0-1"
    title = "Lognormal(0,1)"
    dist1 = "lognormal:0,1"

    reference = {
        0.00: ReferenceRow(1.64, (1.61, 1.67), 4.65, (4.17, 5.13)),
        0.05: ReferenceRow(1.28, (1.26, 1.29), 1.15, (1.12, 1.18)),
        0.10: ReferenceRow(1.11, (1.10, 1.12), 0.68, (0.66, 0.69)),
        0.20: ReferenceRow(0.89, (0.89, 0.90), 0.32, (0.32, 0.33)),
    }


class LognormalThreeTwo(Scenario):
    key = "lognormal-3-2"
    title = "Lognormal(3,2)"
    dist1 = "lognormal:3,2"

    reference = {
        0.00: ReferenceRow(147.63, (136.42, 158.85), 654994.15, (361274.95, 948713.36)),
        0.05: ReferenceRow(55.85, (54.55, 57.16), 8445.13, (8071.17, 8819.09)),
        0.10: ReferenceRow(38.43, (37.66, 39.20), 2789.05, (2693.10, 2885.01)),
        0.20: ReferenceRow(22.55, (22.16, 22.95), 654.95, (636.41, 673.49)),
    }
