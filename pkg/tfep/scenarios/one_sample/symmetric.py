"""
Symmetric laws, trimmed on both sides: the Normal(3,2) benchmark and
Student's t with 1, 2, 3 and 5 degrees of freedom shifted to center 5.
"""

from tfep.base import ReferenceRow, Scenario


class NormalBenchmark(Scenario):
    key = "normal-3-2"
    title = "Normal(3,2)"
    dist1 = "normal:3,2"

    notes = """
    Light-tailed benchmark; trimming only shrinks the variance.

    Known quirks:
    - The variance printed at tau=0.05 reads 2.25, outside its own interval
      [2.45, 2.56]; the population trimmed variance there is about 2.49.
    """

    reference = {
        0.00: ReferenceRow(2.98, (2.94, 3.02), 4.01, (3.90, 4.12)),
        0.05: ReferenceRow(2.98, (2.95, 3.01), 2.25, (2.45, 2.56)),
        0.10: ReferenceRow(2.98, (2.95, 3.01), 1.75, (1.71, 1.79)),
        0.20: ReferenceRow(2.97, (2.95, 3.00), 0.85, (0.83, 0.87)),
    }


class ShiftedStudentOne(Scenario):
    key = "student-1"
    title = "5+Student(df=1)"
    dist1 = "student:1+5"

    notes = """
    Cauchy tails: no mean and no variance before trimming, so the tau=0 row
    is unstable and its variance interval reaches below zero.
    """

    reference = {
        0.00: ReferenceRow(7.16, (2.79, 11.53), 99606.62, (-91559.29, 290772.53)),
        0.05: ReferenceRow(4.97, (4.95, 5.00), 3.54, (3.45, 3.64)),
        0.10: ReferenceRow(4.98, (4.96, 5.00), 1.51, (1.47, 1.54)),
        0.20: ReferenceRow(4.98, (4.97, 5.00), 0.48, (0.47, 0.49)),
    }


class ShiftedStudentTwo(Scenario):
    key = "student-2"
    title = "5+Student(df=2)"
    dist1 = "student:2+5"

    reference = {
        0.00: ReferenceRow(4.98, (4.94, 5.03), 10.5, (8.11, 12.90)),
        0.05: ReferenceRow(4.99, (4.98, 5.01), 1.29, (1.26, 1.32)),
        0.10: ReferenceRow(4.99, (4.98, 5.01), 0.76, (0.74, 0.77)),
        0.20: ReferenceRow(4.99, (4.98, 5.00), 0.32, (0.31, 0.32)),
    }


class ShiftedStudentThree(Scenario):
    key = "student-3"
    title = "5+Student(df=3)"
    dist1 = "student:3+5"

    reference = {
        0.00: ReferenceRow(4.99, (4.97, 5.02), 2.91, (2.61, 3.21)),
        0.05: ReferenceRow(4.99, (4.98, 5.01), 0.97, (0.95, 0.99)),
        0.10: ReferenceRow(4.99, (4.98, 5.01), 0.61, (0.60, 0.62)),
        0.20: ReferenceRow(4.99, (4.98, 5.00), 0.26, (0.26, 0.27)),
    }


class ShiftedStudentFive(Scenario):
    key = "student-5"
    title = "5+Student(df=5)"
    dist1 = "student:5+5"

    reference = {
        0.00: ReferenceRow(4.99, (4.98, 5.01), 1.62, (1.57, 1.68)),
        0.05: ReferenceRow(4.99, (4.98, 5.01), 0.79, (0.78, 0.80)),
        0.10: ReferenceRow(4.99, (4.98, 5.00), 0.52, (0.51, 0.53)),
        0.20: ReferenceRow(4.99, (4.98, 5.00), 0.24, (0.24, 0.25)),
    }
