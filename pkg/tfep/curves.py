"""
Plot-ready curve data: ECDF bands of a trimmed sample and normal Q-Q points.

Nothing here draws; the rows are meant to be written as CSV and plotted
elsewhere.
"""

from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel
from scipy import special, stats

from tfep.errors import DataError, DegenerateError
from tfep.inference import z_quantile
from tfep.trimming import TrimSpec, as_finite_sample, sort_and_trim


class EcdfPoint(BaseModel):
    x: float
    ecdf: float
    lower: float
    upper: float


class QQPoint(BaseModel):
    theoretical: float
    sample: float


def ecdf_band(
    values: Sequence[float] | np.ndarray,
    trim: TrimSpec | None = None,
    alpha: float = 0.05,
    grid: Sequence[float] | None = None,
) -> list[EcdfPoint]:
    """
    ECDF of the retained sample with pointwise normal confidence bands.

    The band at x is F(x) +/- z * sqrt(F(x)(1 - F(x)) / n_tau), clipped to
    [0, 1].

    Args:
        values: The observations.
        trim: Trimming applied before the ECDF; None keeps every value.
        alpha: 1 - pointwise confidence level.
        grid: Points to evaluate at; defaults to the distinct retained values.
    """
    view = sort_and_trim(values, trim or TrimSpec.symmetric(0.0))
    z = z_quantile(1 - alpha / 2)
    retained = view.retained
    xs = np.unique(retained) if grid is None else np.sort(np.asarray(grid, dtype=np.float64))

    ecdf = stats.ecdf(retained).cdf.evaluate(xs)
    half = z * np.sqrt(ecdf * (1 - ecdf) / view.n_tau)
    lower = np.clip(ecdf - half, 0.0, 1.0)
    upper = np.clip(ecdf + half, 0.0, 1.0)
    return [
        EcdfPoint(x=float(x), ecdf=float(f), lower=float(lo), upper=float(hi))
        for x, f, lo, hi in zip(xs, ecdf, lower, upper, strict=True)
    ]


def normal_qq(values: Sequence[float] | np.ndarray) -> list[QQPoint]:
    """
    Standardized sorted sample against normal quantiles at Blom positions
    (i - 3/8) / (n + 1/4).

    Raises:
        DataError: With fewer than 2 values.
        DegenerateError: If every value is the same.
    """
    arr = as_finite_sample(values)
    n = arr.size
    if n < 2:
        raise DataError(f"Q-Q points need at least 2 values, got {n}")
    sd = float(np.std(arr, ddof=1))
    if sd == 0:
        raise DegenerateError("Q-Q points of a constant sample are undefined")

    ordered = np.sort(arr, kind="stable")
    standardized = (ordered - float(np.mean(arr))) / sd
    positions = (np.arange(1, n + 1) - 3 / 8) / (n + 1 / 4)
    theoretical = special.ndtri(positions)
    return [
        QQPoint(theoretical=float(q), sample=float(s))
        for q, s in zip(theoretical, standardized, strict=True)
    ]
