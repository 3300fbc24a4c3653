"""
Order statistics and trim windows.

A TrimSpec says which order statistics to keep; sort_and_trim applies it to
a sample and returns the TrimmedView every estimator consumes. Trimming
counts positions, not distinct values: ties are kept in sorted order.

Grammar accepted by TrimSpec.parse (the CLI --trim flag):

    0.10          symmetric, tau = 0.10
    upper:0.10    remove the top floor(tau n) only
    lower:0.05    remove the bottom floor(tau n) only
    k=3,l=97      keep order statistics k+1 .. l (1-based)
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np
import regex as re
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from tfep.errors import DataError, OverTrimmedError, UsageError

TrimMode = Literal["symmetric", "lower", "upper", "explicit"]

_RE_TAU = re.compile(r"^(?:(?P<mode>symmetric|upper|lower):)?(?P<tau>\d*\.?\d+(?:[eE]-?\d+)?)$")
_RE_EXPLICIT = re.compile(r"^k=(?P<k>\d+),l=(?P<l>\d+)$")


class TrimSpec(BaseModel):
    """Which order statistics to retain."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: TrimMode = "symmetric"
    tau: float = Field(default=0.0, ge=0.0, lt=0.5)
    k_n: int | None = Field(default=None, ge=0)
    l_n: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_mode_fields(self) -> "TrimSpec":
        if self.mode == "explicit":
            if self.k_n is None or self.l_n is None:
                raise ValueError("explicit trimming needs both k_n and l_n")
            if not self.k_n < self.l_n:
                raise ValueError(f"explicit trimming needs k_n < l_n, got {self.k_n}, {self.l_n}")
        elif self.k_n is not None or self.l_n is not None:
            raise ValueError("k_n and l_n are only allowed with mode='explicit'")
        return self

    @classmethod
    def symmetric(cls, tau: float) -> "TrimSpec":
        return cls._build(mode="symmetric", tau=tau)

    @classmethod
    def lower(cls, tau: float) -> "TrimSpec":
        return cls._build(mode="lower", tau=tau)

    @classmethod
    def upper(cls, tau: float) -> "TrimSpec":
        return cls._build(mode="upper", tau=tau)

    @classmethod
    def explicit(cls, k_n: int, l_n: int) -> "TrimSpec":
        return cls._build(mode="explicit", k_n=k_n, l_n=l_n)

    @classmethod
    def _build(cls, **kwargs: object) -> "TrimSpec":
        try:
            return cls(**kwargs)
        except ValidationError as e:
            raise UsageError(f"Invalid trim {kwargs}: {e.errors()[0]['msg']}") from e

    @classmethod
    def parse(cls, text: str, default_mode: TrimMode = "symmetric") -> "TrimSpec":
        """
        Parse one --trim item.

        Args:
            text: "0.10", "upper:0.10", "lower:0.05" or "k=3,l=97".
            default_mode: Mode used when text carries none (from --trim-mode).

        Raises:
            UsageError: If text does not match the grammar.
        """
        text = text.strip()
        if m := _RE_EXPLICIT.match(text):
            return cls.explicit(int(m.group("k")), int(m.group("l")))
        if m := _RE_TAU.match(text):
            return cls._build(mode=m.group("mode") or default_mode, tau=float(m.group("tau")))
        raise UsageError(
            f"Malformed trim {text!r}; expected TAU, upper:TAU, lower:TAU or k=K,l=L"
        )

    def to_text(self) -> str:
        if self.mode == "explicit":
            return f"k={self.k_n},l={self.l_n}"
        if self.mode == "symmetric":
            return f"{self.tau:g}"
        return f"{self.mode}:{self.tau:g}"


def _floor_tau_n(tau: float, n: int) -> int:
    # tau * n within 1e-9 below an integer is binary rounding of a decimal tau
    # (0.29 * 100 == 28.999999999999996); floor to that integer.
    return math.floor(tau * n + 1e-9)


def trim_indices(n: int, spec: TrimSpec) -> tuple[int, int]:
    """
    Trim window (k_n, l_n) for a sample of size n.

    The retained order statistics are X_(k_n+1) .. X_(l_n), so the effective
    size is n_tau = l_n - k_n.

    Raises:
        DataError: If n < 2.
        OverTrimmedError: If fewer than two observations would remain.
    """
    if n < 2:
        raise DataError(f"Need at least 2 observations, got {n}")

    if spec.mode == "explicit":
        k_n, l_n = int(spec.k_n), int(spec.l_n)  # type: ignore[arg-type]
        if l_n > n:
            raise OverTrimmedError(f"Explicit window l={l_n} exceeds sample size {n}", k_n, l_n)
    else:
        cut = _floor_tau_n(spec.tau, n)
        if spec.mode == "symmetric":
            k_n, l_n = cut, n - cut
        elif spec.mode == "lower":
            k_n, l_n = cut, n
        else:
            k_n, l_n = 0, n - cut

    if l_n - k_n < 2:
        raise OverTrimmedError(
            f"Over-trimmed: {spec.to_text()} on n={n} keeps {l_n - k_n} observation(s)",
            k_n,
            l_n,
        )
    return k_n, l_n


@dataclass(frozen=True, eq=False)
class TrimmedView:
    """
    Sorted retained order statistics of a sample.

    Attributes:
        retained: X_(k_n+1) .. X_(l_n), ascending, read-only.
        k_n: Number of order statistics removed below.
        l_n: Index of the last retained order statistic (1-based).
        n: Original sample size.
    """

    retained: np.ndarray
    k_n: int
    l_n: int
    n: int

    def __post_init__(self) -> None:
        if len(self.retained) != self.l_n - self.k_n or self.n_tau < 2:
            raise OverTrimmedError(
                f"Inconsistent view: {len(self.retained)} values for window "
                f"({self.k_n}, {self.l_n})",
                self.k_n,
                self.l_n,
            )
        if np.any(np.diff(self.retained) < 0):
            raise DataError("Retained values must be sorted ascending")

    @property
    def n_tau(self) -> int:
        """Effective sample size after trimming."""
        return self.l_n - self.k_n

    @property
    def retained_fraction(self) -> float:
        return self.n_tau / self.n

    @property
    def is_untrimmed(self) -> bool:
        return self.k_n == 0 and self.l_n == self.n

    @property
    def lower_bound(self) -> float:
        """X_(k_n+1), the lower edge of the truncation region."""
        return float(self.retained[0])

    @property
    def upper_bound(self) -> float:
        """X_(l_n), the upper edge of the truncation region."""
        return float(self.retained[-1])


def as_finite_sample(values: Sequence[float] | np.ndarray) -> np.ndarray:
    """One-dimensional float copy of values, rejecting NaN and inf by index."""
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise DataError(f"Expected a one-dimensional sample, got shape {arr.shape}")
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise DataError(f"Non-finite value {arr[bad[0]]} at index {int(bad[0])}")
    return arr


def sort_and_trim(values: Sequence[float] | np.ndarray, spec: TrimSpec) -> TrimmedView:
    """
    Sort a sample and keep the order statistics selected by spec.

    The input is never modified.

    Raises:
        DataError: On NaN/inf input (naming the index) or fewer than 2 values.
        OverTrimmedError: If the window keeps fewer than 2 values.
    """
    arr = as_finite_sample(values)
    k_n, l_n = trim_indices(len(arr), spec)

    ordered = np.sort(arr, kind="stable")
    retained = ordered[k_n:l_n].copy()
    retained.setflags(write=False)
    return TrimmedView(retained=retained, k_n=k_n, l_n=l_n, n=len(arr))
