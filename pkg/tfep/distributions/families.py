"""
Distribution families for the simulation studies.

Each family is a frozen pydantic model tagged by ``family``, so a
distribution can sit inside a YAML study config and also be parsed from the
canonical text form used on the command line:

    normal:3,2   student:2+5   pareto:1,1.5   lognormal:0,1   cauchy:0,1

CDFs and quantiles come from scipy.special (ndtr/ndtri for the normal,
stdtr/stdtrit for Student's t); Pareto and Cauchy use their closed forms.
"""

import math
from abc import ABC, abstractmethod
from typing import Annotated, Any, Literal

import numpy as np
import regex as re
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError
from scipy import special

from tfep.distributions.seeds import Seed
from tfep.errors import DomainError, InfiniteMomentError, NumericalError, UsageError

# Unsigned real number as written on the command line
_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?"
_SIGNED_NUM = rf"[-+]?{_NUM}"

_RE_SPEC = re.compile(r"^(?P<family>[a-z]+):(?P<params>.+)$")
_RE_PAIR = re.compile(rf"^(?P<a>{_SIGNED_NUM}),(?P<b>{_SIGNED_NUM})$")
_RE_STUDENT = re.compile(rf"^(?P<df>{_NUM})(?:(?P<sign>[-+])(?P<shift>{_NUM}))?$")


def _fmt(x: float) -> str:
    """Shortest exact text for a float, dropping a trailing '.0'."""
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


class Distribution(BaseModel, ABC):
    """
    Base class for a parametric family.

    Subclasses define the quantile function, the CDF, a sampler and the
    untrimmed moments. Parameters are validated on construction, so an
    instance is always usable.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    family: str

    @abstractmethod
    def ppf(self, p: np.ndarray) -> np.ndarray:
        """Quantile function on an array of probabilities in (0, 1)."""
        ...

    @abstractmethod
    def cdf(self, x: np.ndarray) -> np.ndarray:
        """Distribution function on an array of reals."""
        ...

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n values; inverse-CDF by default."""
        return self.ppf(rng.random(n))

    def moment_exists(self, order: int) -> bool:
        """Whether E|X|^order is finite."""
        return True

    @abstractmethod
    def untrimmed_moments(self) -> tuple[float, float, float]:
        """
        Mean, variance and fourth central moment of the untrimmed law.

        The fourth moment is +inf when it diverges.

        Raises:
            InfiniteMomentError: If the mean or the variance does not exist.
        """
        ...

    def untrimmed_mean(self) -> float:
        """
        Mean of the untrimmed law.

        Raises:
            InfiniteMomentError: If the mean does not exist.
        """
        return self.untrimmed_moments()[0]

    @abstractmethod
    def to_text(self) -> str:
        """Canonical text form, inverse of parse_distribution."""
        ...

    def _require(self, order: int) -> None:
        if not self.moment_exists(order):
            what = {1: "mean", 2: "variance"}.get(order, f"moment of order {order}")
            raise InfiniteMomentError(
                f"{self.to_text()} has no finite {what}; trim with tau > 0", order=order
            )

    def __str__(self) -> str:
        return self.to_text()


class Normal(Distribution):
    family: Literal["normal"] = "normal"
    mu: float = 0.0
    sigma: float = Field(default=1.0, gt=0)

    def ppf(self, p: np.ndarray) -> np.ndarray:
        return self.mu + self.sigma * special.ndtri(p)

    def cdf(self, x: np.ndarray) -> np.ndarray:
        return special.ndtr((np.asarray(x, dtype=float) - self.mu) / self.sigma)

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.mu + self.sigma * rng.standard_normal(n)

    def untrimmed_moments(self) -> tuple[float, float, float]:
        variance = self.sigma**2
        return self.mu, variance, 3.0 * variance**2

    def to_text(self) -> str:
        return f"normal:{_fmt(self.mu)},{_fmt(self.sigma)}"


class Student(Distribution):
    """Student's t with ``df`` degrees of freedom, shifted by ``shift``."""

    family: Literal["student"] = "student"
    df: float = Field(gt=0)
    shift: float = 0.0

    def ppf(self, p: np.ndarray) -> np.ndarray:
        return self.shift + special.stdtrit(self.df, p)

    def cdf(self, x: np.ndarray) -> np.ndarray:
        return special.stdtr(self.df, np.asarray(x, dtype=float) - self.shift)

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        z = rng.standard_normal(n)
        chi2 = rng.chisquare(self.df, n)
        return self.shift + z / np.sqrt(chi2 / self.df)

    def moment_exists(self, order: int) -> bool:
        return order < self.df

    def untrimmed_mean(self) -> float:
        self._require(1)
        return self.shift

    def untrimmed_moments(self) -> tuple[float, float, float]:
        self._require(1)
        self._require(2)
        df = self.df
        variance = df / (df - 2)
        mu4 = 3 * df**2 / ((df - 2) * (df - 4)) if self.moment_exists(4) else math.inf
        return self.shift, variance, mu4

    def to_text(self) -> str:
        if self.shift == 0:
            return f"student:{_fmt(self.df)}"
        sign = "+" if self.shift > 0 else "-"
        return f"student:{_fmt(self.df)}{sign}{_fmt(abs(self.shift))}"


class Pareto(Distribution):
    """Pareto type I with scale ``xm`` and tail index ``alpha``."""

    family: Literal["pareto"] = "pareto"
    xm: float = Field(default=1.0, gt=0)
    alpha: float = Field(gt=0)

    def ppf(self, p: np.ndarray) -> np.ndarray:
        return self.xm * np.power(1.0 - np.asarray(p, dtype=float), -1.0 / self.alpha)

    def cdf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(x < self.xm, 0.0, -np.expm1(self.alpha * np.log(self.xm / x)))

    def moment_exists(self, order: int) -> bool:
        return order < self.alpha

    def raw_moment(self, order: int) -> float:
        """E[X^order], which requires order < alpha."""
        self._require(order)
        return self.alpha * self.xm**order / (self.alpha - order)

    def untrimmed_mean(self) -> float:
        return self.raw_moment(1)

    def untrimmed_moments(self) -> tuple[float, float, float]:
        self._require(1)
        self._require(2)
        a, xm = self.alpha, self.xm
        mean = self.raw_moment(1)
        variance = xm**2 * a / ((a - 1) ** 2 * (a - 2))
        if not self.moment_exists(4):
            return mean, variance, math.inf
        m2, m3, m4 = (self.raw_moment(k) for k in (2, 3, 4))
        mu4 = m4 - 4 * mean * m3 + 6 * mean**2 * m2 - 3 * mean**4
        return mean, variance, mu4

    def to_text(self) -> str:
        return f"pareto:{_fmt(self.xm)},{_fmt(self.alpha)}"


class Lognormal(Distribution):
    """exp(N(mu, sigma^2))."""

    family: Literal["lognormal"] = "lognormal"
    mu: float = 0.0
    sigma: float = Field(default=1.0, gt=0)

    def ppf(self, p: np.ndarray) -> np.ndarray:
        return np.exp(self.mu + self.sigma * special.ndtri(p))

    def cdf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            z = (np.log(np.where(x > 0, x, np.nan)) - self.mu) / self.sigma
        return np.where(x > 0, special.ndtr(z), 0.0)

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.exp(self.mu + self.sigma * rng.standard_normal(n))

    def untrimmed_moments(self) -> tuple[float, float, float]:
        s2 = self.sigma**2
        w = math.exp(s2)
        mean = math.exp(self.mu + s2 / 2)
        variance = (w - 1) * math.exp(2 * self.mu + s2)
        mu4 = math.exp(4 * self.mu + 2 * s2) * (w - 1) ** 2 * (w**4 + 2 * w**3 + 3 * w**2 - 3)
        return mean, variance, mu4

    def to_text(self) -> str:
        return f"lognormal:{_fmt(self.mu)},{_fmt(self.sigma)}"


class Cauchy(Distribution):
    family: Literal["cauchy"] = "cauchy"
    location: float = 0.0
    scale: float = Field(default=1.0, gt=0)

    def ppf(self, p: np.ndarray) -> np.ndarray:
        return self.location + self.scale * np.tan(np.pi * (np.asarray(p, dtype=float) - 0.5))

    def cdf(self, x: np.ndarray) -> np.ndarray:
        z = (np.asarray(x, dtype=float) - self.location) / self.scale
        return 0.5 + np.arctan(z) / np.pi

    def moment_exists(self, order: int) -> bool:
        return False

    def untrimmed_moments(self) -> tuple[float, float, float]:
        raise InfiniteMomentError(
            f"{self.to_text()} has no finite mean; trim with tau > 0", order=1
        )

    def to_text(self) -> str:
        return f"cauchy:{_fmt(self.location)},{_fmt(self.scale)}"


DistributionSpec = Annotated[
    Normal | Student | Pareto | Lognormal | Cauchy,
    Field(discriminator="family"),
]

_ADAPTER: TypeAdapter[DistributionSpec] = TypeAdapter(DistributionSpec)

# Parameter names for the two-number families, in text-form order
_PAIR_FIELDS: dict[str, tuple[str, str]] = {
    "normal": ("mu", "sigma"),
    "pareto": ("xm", "alpha"),
    "lognormal": ("mu", "sigma"),
    "cauchy": ("location", "scale"),
}


def parse_distribution(text: str) -> Distribution:
    """
    Parse the canonical text form of a distribution.

    Args:
        text: e.g. "normal:3,2", "student:2+5", "pareto:1,1.5".

    Returns:
        The validated distribution.

    Raises:
        UsageError: On unknown family, malformed parameters or invalid values.
    """
    match = _RE_SPEC.match(text.strip())
    if not match:
        raise UsageError(f"Malformed distribution {text!r}; expected 'family:params'")

    family = match.group("family")
    params = match.group("params")

    if family == "student":
        m = _RE_STUDENT.match(params)
        if not m:
            raise UsageError(f"Malformed Student parameters {params!r}; expected DF or DF+SHIFT")
        shift = float(m.group("shift") or 0.0)
        if m.group("sign") == "-":
            shift = -shift
        data: dict[str, Any] = {"family": "student", "df": float(m.group("df")), "shift": shift}
    elif family in _PAIR_FIELDS:
        m = _RE_PAIR.match(params)
        if not m:
            raise UsageError(f"Malformed {family} parameters {params!r}; expected two numbers")
        first, second = _PAIR_FIELDS[family]
        data = {"family": family, first: float(m.group("a")), second: float(m.group("b"))}
    else:
        known = ", ".join(["normal", "student", *sorted(set(_PAIR_FIELDS) - {"normal"})])
        raise UsageError(f"Unknown distribution family {family!r}; known: {known}")

    return coerce_distribution(data)


def coerce_distribution(value: Any) -> Distribution:
    """Accept a Distribution, its text form, or a mapping with a 'family' key."""
    if isinstance(value, Distribution):
        return value
    if isinstance(value, str):
        return parse_distribution(value)
    try:
        return _ADAPTER.validate_python(value)
    except ValidationError as e:
        raise UsageError(f"Invalid distribution {value!r}: {e.errors()[0]['msg']}") from e


def _check_probabilities(p: float | np.ndarray) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if not np.all((arr > 0) & (arr < 1)):
        raise DomainError(f"Probabilities must lie strictly inside (0, 1), got {p!r}")
    return arr


def quantile(spec: Distribution, p: float | np.ndarray) -> float | np.ndarray:
    """
    Quantile function F^-1(p).

    Raises:
        DomainError: If any p is outside (0, 1).
    """
    arr = _check_probabilities(p)
    result = spec.ppf(arr)
    return float(result) if np.ndim(result) == 0 else result


def cdf(spec: Distribution, x: float | np.ndarray) -> float | np.ndarray:
    """Distribution function F(x)."""
    result = spec.cdf(np.asarray(x, dtype=float))
    return float(result) if np.ndim(result) == 0 else result


def sample(spec: Distribution, n: int, seed: Seed) -> np.ndarray:
    """
    Draw n i.i.d. values from spec, deterministically given seed.

    Raises:
        DomainError: If n < 1.
        NumericalError: If the sampler produced a non-finite value.
    """
    if n < 1:
        raise DomainError(f"Sample size must be at least 1, got {n}")

    values = np.asarray(spec.draw(seed.rng(), int(n)), dtype=float)
    if not np.all(np.isfinite(values)):
        raise NumericalError(
            f"Sampler for {spec} produced non-finite values",
            diagnostics={"seed": seed, "n": n},
        )
    return values
