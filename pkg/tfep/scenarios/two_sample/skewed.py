"""
Pairs of skewed heavy-tailed laws: two Pareto pairs and a lognormal pair.

These values were printed under a "bootstrap" heading, but no resampling
procedure accompanies them; they are reproduced with the same asymptotic
intervals as every other scenario.
"""

from tfep.base import ReferenceRow, Scenario


class ParetoHeavyPair(Scenario):
    key = "pareto-1-1.5-vs-pareto-1-2"
    title = "Pareto(1,1.5) - Pareto(1,2)"
    kind = "two-sample"
    dist1 = "pareto:1,1.5"
    dist2 = "pareto:1,2"
    interval_shape = "log"

    notes = """
    Neither law has a finite variance, so the tau=0 ratio has no population
    value.
    """

    reference = {
        0.00: ReferenceRow(27.239, (11.225, 66.098), 0.927, (0.718, 1.136)),
        0.05: ReferenceRow(2.89, (2.589, 3.004), 0.368, (0.340, 0.397)),
        0.10: ReferenceRow(2.6, (2.445, 2.766), 0.296, (0.275, 0.316)),
        0.20: ReferenceRow(2.426, (2.291, 2.570), 0.230, (0.216, 0.243)),
    }


class ParetoLightPair(Scenario):
    key = "pareto-1-2.5-vs-pareto-1-3"
    title = "Pareto(1,2.5) - Pareto(1,3)"
    kind = "two-sample"
    dist1 = "pareto:1,2.5"
    dist2 = "pareto:1,3"
    interval_shape = "log"

    reference = {
        0.00: ReferenceRow(2.069, (1.373, 3.118), 0.147, (0.117, 0.177)),
        0.05: ReferenceRow(1.654, (1.553, 1.763), 0.098, (0.085, 0.110)),
        0.10: ReferenceRow(1.623, (1.534, 1.717), 0.084, (0.075, 0.094)),
        0.20: ReferenceRow(1.526, (1.445, 1.612), 0.069, (0.062, 0.076)),
    }


class LognormalPair(Scenario):
    key = "lognormal-1-2-vs-lognormal-1-1"
    title = "Lognormal(1,2) - Lognormal(1,1)"
    kind = "two-sample"
    dist1 = "lognormal:1,2"
    dist2 = "lognormal:1,1"
    interval_shape = "log"

    reference = {
        0.00: ReferenceRow(340.490, (191.658, 604.896), 15.037, (12.987, 17.088)),
        0.05: ReferenceRow(17.023, (15.769, 18.378), 4.153, (3.896, 4.410)),
        0.10: ReferenceRow(10.734, (10.048, 11.467), 2.459, (2.293, 2.625)),
        0.20: ReferenceRow(6.568, (6.178, 6.983), 1.007, (0.911, 1.102)),
    }
