"""
Population trimmed moments.

For a trimming proportion tau the trimmed law keeps the quantile window
[F^-1(tau), F^-1(1 - tau)], so

    mu_tau     = (1 - 2 tau)^-1  int_tau^(1-tau) F^-1(u) du
    sigma2_tau = (1 - 2 tau)^-1  int_tau^(1-tau) (F^-1(u) - mu_tau)^2 du
    mu4_tau    = (1 - 2 tau)^-1  int_tau^(1-tau) (F^-1(u) - mu_tau)^4 du

The integrals are computed with QUADPACK's adaptive routine through
scipy.integrate.quad. At tau = 0 the closed-form untrimmed moments of the
family are used instead, which refuses laws whose mean or variance diverges.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

from scipy import integrate, special

from tfep.distributions.families import Distribution, Normal, Pareto
from tfep.errors import DomainError, NumericalError

logger = logging.getLogger(__name__)

QUAD_EPSABS = 1e-8
QUAD_EPSREL = 1e-10
QUAD_LIMIT = 200
CLOSED_FORM_TOL = 1e-6


@dataclass(frozen=True)
class PopulationTrimmedMoments:
    """Trimmed mean, variance and fourth central moment of a law."""

    mu_tau: float
    sigma2_tau: float
    mu4_tau: float
    tau: float

    def __post_init__(self) -> None:
        if self.sigma2_tau < 0:
            raise NumericalError(f"Negative trimmed variance {self.sigma2_tau}")
        # power-mean inequality, up to quadrature error
        if self.mu4_tau < self.sigma2_tau**2 * (1 - 1e-9):
            raise NumericalError(
                f"Trimmed fourth moment {self.mu4_tau} below squared variance",
                diagnostics={"sigma2_tau": self.sigma2_tau, "mu4_tau": self.mu4_tau},
            )


def _integrate(func: Callable[[float], float], lo: float, hi: float, what: str) -> float:
    result = integrate.quad(
        func,
        lo,
        hi,
        epsabs=QUAD_EPSABS,
        epsrel=QUAD_EPSREL,
        limit=QUAD_LIMIT,
        full_output=1,
    )
    value, abserr, info = result[0], result[1], result[2]
    if len(result) > 3:
        raise NumericalError(
            f"Quadrature for {what} did not converge: {result[3]}",
            diagnostics={"abserr": abserr, "neval": info["neval"], "interval": (lo, hi)},
        )
    logger.debug("quad %s on [%g, %g]: %.12g (abserr %.2e)", what, lo, hi, value, abserr)
    return value


def normal_trimmed_variance(sigma: float, tau: float) -> float:
    """Closed-form trimmed variance of Normal(mu, sigma)."""
    if tau == 0:
        return sigma**2
    z = float(special.ndtri(1 - tau))
    phi = math.exp(-z * z / 2) / math.sqrt(2 * math.pi)
    w = 1 - 2 * tau
    return sigma**2 * (w - 2 * z * phi) / w


def pareto_trimmed_mean(xm: float, alpha: float, tau: float) -> float:
    """Closed-form trimmed mean of Pareto(xm, alpha) for tau > 0."""
    w = 1 - 2 * tau
    if alpha == 1:
        return xm * math.log((1 - tau) / tau) / w
    e = 1 - 1 / alpha
    return xm * alpha / (alpha - 1) * ((1 - tau) ** e - tau**e) / w


def _cross_check(spec: Distribution, moments: PopulationTrimmedMoments) -> None:
    checks: list[tuple[str, float, float]] = []
    if isinstance(spec, Normal):
        checks.append(("mu_tau", moments.mu_tau, spec.mu))
        checks.append(
            ("sigma2_tau", moments.sigma2_tau, normal_trimmed_variance(spec.sigma, moments.tau))
        )
    elif isinstance(spec, Pareto):
        checks.append(
            ("mu_tau", moments.mu_tau, pareto_trimmed_mean(spec.xm, spec.alpha, moments.tau))
        )

    for name, value, reference in checks:
        if abs(value - reference) > CLOSED_FORM_TOL * max(1.0, abs(reference)):
            raise NumericalError(
                f"Quadrature {name} for {spec} disagrees with closed form",
                diagnostics={"quadrature": value, "closed_form": reference, "tau": moments.tau},
            )


def population_trimmed_moments(spec: Distribution, tau: float) -> PopulationTrimmedMoments:
    """
    Population trimmed moments of spec at trimming proportion tau.

    Args:
        spec: The distribution.
        tau: Symmetric trimming proportion in [0, 0.5).

    Returns:
        PopulationTrimmedMoments.

    Raises:
        DomainError: If tau is outside [0, 0.5).
        InfiniteMomentError: If tau = 0 and the mean or variance diverges.
        NumericalError: If quadrature fails or disagrees with a closed form.
    """
    if not 0 <= tau < 0.5:
        raise DomainError(f"tau must lie in [0, 0.5), got {tau}")

    if tau == 0:
        mean, variance, mu4 = spec.untrimmed_moments()
        return PopulationTrimmedMoments(mean, variance, mu4, 0.0)

    lo, hi = tau, 1 - tau
    width = 1 - 2 * tau

    def q(u: float) -> float:
        return float(spec.ppf(u))

    mu = _integrate(q, lo, hi, "trimmed mean") / width
    sigma2 = _integrate(lambda u: (q(u) - mu) ** 2, lo, hi, "trimmed variance") / width
    mu4 = _integrate(lambda u: (q(u) - mu) ** 4, lo, hi, "trimmed fourth moment") / width

    moments = PopulationTrimmedMoments(mu, sigma2, mu4, tau)
    _cross_check(spec, moments)
    return moments
