"""
Simulation studies and coverage experiments.

A study draws its data from the seed streams of its master seed: replication
r of sample j uses Seed(master, stream=r, substream=j). Replications are
independent of each other and of the order they run in, so a coverage
experiment gives the same counts for any number of worker processes.
"""

import logging
import math
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from tfep.distributions import Distribution, Seed, population_trimmed_moments, sample
from tfep.errors import ConfigurationError, InfiniteMomentError, TfepError
from tfep.inference import (
    ConfidenceInterval,
    IntervalShape,
    ScalingMode,
    Target,
    one_sample_mean_ci,
    one_sample_variance_ci,
    two_sample_mean_diff_ci,
    two_sample_variance_ratio_ci,
)
from tfep.montecarlo.config import TWO_SAMPLE_TARGETS, StudyConfig, TrimModeName
from tfep.montecarlo.schema import CoverageResult, OneSampleRow, StudyResult, TwoSampleRow
from tfep.trimming import TrimmedView, TrimSpec, sort_and_trim

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[str, int, int], None]


# Tables


def _error_text(errors: list[str]) -> str | None:
    return "; ".join(errors) if errors else None


def _as_trim(item: float | TrimSpec, trim_mode: TrimModeName) -> TrimSpec:
    return item if isinstance(item, TrimSpec) else TrimSpec(mode=trim_mode, tau=item)


def _row_tau(spec: TrimSpec, view: TrimmedView) -> float:
    # explicit windows report the fraction cut from below
    return view.k_n / view.n if spec.mode == "explicit" else spec.tau


def one_sample_rows(
    values: Sequence[float] | np.ndarray,
    trims: Sequence[float | TrimSpec],
    alpha: float = 0.05,
    scaling_mode: ScalingMode = "delta-corrected",
    trim_mode: TrimModeName = "symmetric",
) -> list[OneSampleRow]:
    """
    Mean and variance intervals of one sample at every trimming level.

    Items of trims are tau values (trimmed with trim_mode) or TrimSpecs.

    A failure at one level is recorded in that row's error field and the
    remaining levels are still computed.
    """
    rows = []
    for item in trims:
        errors: list[str] = []
        spec = _as_trim(item, trim_mode)
        try:
            view = sort_and_trim(values, spec)
        except TfepError as e:
            logger.warning("trim %s: %s", spec.to_text(), e)
            rows.append(OneSampleRow(tau=spec.tau, error=str(e)))
            continue
        tau = _row_tau(spec, view)

        mean_ci = variance_ci = None
        try:
            mean_ci = one_sample_mean_ci(view, alpha, scaling_mode)
        except TfepError as e:
            errors.append(f"mean: {e}")
        try:
            variance_ci = one_sample_variance_ci(view, alpha, scaling_mode)
        except TfepError as e:
            errors.append(f"variance: {e}")

        if errors:
            logger.warning("tau=%g: %s", tau, "; ".join(errors))
        rows.append(
            OneSampleRow(
                tau=tau,
                k_n=view.k_n,
                l_n=view.l_n,
                n_tau=view.n_tau,
                mean_ci=mean_ci,
                variance_ci=variance_ci,
                error=_error_text(errors),
            )
        )
    return rows


def two_sample_rows(
    values1: Sequence[float] | np.ndarray,
    values2: Sequence[float] | np.ndarray,
    trims: Sequence[float | TrimSpec],
    alpha: float = 0.05,
    scaling_mode: ScalingMode = "delta-corrected",
    trim_mode: TrimModeName = "symmetric",
    interval_shape: IntervalShape = "symmetric",
) -> list[TwoSampleRow]:
    """Variance-ratio and mean-difference intervals at every trimming level."""
    rows = []
    for item in trims:
        errors: list[str] = []
        spec = _as_trim(item, trim_mode)
        try:
            view1 = sort_and_trim(values1, spec)
            view2 = sort_and_trim(values2, spec)
        except TfepError as e:
            logger.warning("trim %s: %s", spec.to_text(), e)
            rows.append(TwoSampleRow(tau=spec.tau, error=str(e)))
            continue
        tau = _row_tau(spec, view1)

        ratio_ci = mean_diff_ci = None
        try:
            ratio_ci = two_sample_variance_ratio_ci(
                view1, view2, alpha, scaling_mode, interval_shape
            )
        except TfepError as e:
            errors.append(f"variance-ratio: {e}")
        try:
            mean_diff_ci = two_sample_mean_diff_ci(view1, view2, alpha, scaling_mode)
        except TfepError as e:
            errors.append(f"mean-difference: {e}")

        if errors:
            logger.warning("tau=%g: %s", tau, "; ".join(errors))
        rows.append(
            TwoSampleRow(
                tau=tau,
                n1_tau=view1.n_tau,
                n2_tau=view2.n_tau,
                ratio_ci=ratio_ci,
                mean_diff_ci=mean_diff_ci,
                error=_error_text(errors),
            )
        )
    return rows


def _source(config: StudyConfig) -> str:
    if config.dist2 is None or not config.needs_second_sample():
        return f"{config.dist1.to_text()} n={config.n1}"
    return f"{config.dist1.to_text()} n={config.n1} vs {config.dist2.to_text()} n={config.n2}"


def run_one_sample_study(config: StudyConfig) -> StudyResult:
    """
    Draw one sample of size n1 and tabulate both intervals per trimming level.

    Raises:
        ConfigurationError: If config.kind is not one-sample.
    """
    if config.kind != "one-sample":
        raise ConfigurationError(f"Expected a one-sample config, got {config.kind}")

    logger.info("One-sample study %s, master seed %d", _source(config), config.master_seed)
    values = sample(config.dist1, config.n1, Seed(config.master_seed))
    rows = one_sample_rows(
        values, config.tau_grid, config.alpha, config.scaling_mode, config.trim_mode
    )
    return StudyResult(
        kind="one-sample",
        source=_source(config),
        master_seed=config.master_seed,
        config=config,
        rows=rows,
    )


def run_two_sample_study(config: StudyConfig) -> StudyResult:
    """
    Draw two independent samples and tabulate ratio and difference intervals.

    Raises:
        ConfigurationError: If config.kind is not two-sample.
    """
    if config.kind != "two-sample":
        raise ConfigurationError(f"Expected a two-sample config, got {config.kind}")

    logger.info("Two-sample study %s, master seed %d", _source(config), config.master_seed)
    seed = Seed(config.master_seed)
    values1 = sample(config.dist1, config.n1, seed)
    values2 = sample(config.dist2, config.n2, seed.with_substream(1))  # type: ignore[arg-type]
    rows = two_sample_rows(
        values1,
        values2,
        config.tau_grid,
        config.alpha,
        config.scaling_mode,
        config.trim_mode,
        config.interval_shape,
    )
    return StudyResult(
        kind="two-sample",
        source=_source(config),
        master_seed=config.master_seed,
        config=config,
        rows=rows,
    )


# Coverage


def _untrimmed_truth(spec: Distribution, target: Target) -> float:
    if target == "variance":
        if not spec.moment_exists(2):
            return math.inf
        return spec.untrimmed_moments()[1]
    try:
        return spec.untrimmed_mean()
    except InfiniteMomentError as e:
        raise ConfigurationError(f"No population mean for {spec} at tau=0: {e}") from e


def true_value(config: StudyConfig, target: Target, tau: float) -> float:
    """
    Population value an interval for target should cover at tau.

    Trimmed parameters come from the quadrature oracle. At tau = 0 a
    divergent variance has true value +inf.

    Raises:
        ConfigurationError: If the value is undefined (no mean at tau = 0,
            or an infinite-over-infinite variance ratio).
    """
    spec = config.trim_spec(tau)
    if spec.mode != "symmetric" and tau > 0:
        raise ConfigurationError("Coverage needs symmetric trimming; the oracle trims both tails")

    def one(dist: Distribution, what: Target) -> float:
        if tau == 0:
            return _untrimmed_truth(dist, what)
        moments = population_trimmed_moments(dist, tau)
        return moments.mu_tau if what == "mean" else moments.sigma2_tau

    if target in ("mean", "variance"):
        return one(config.dist1, target)

    assert config.dist2 is not None
    if target == "mean-difference":
        return one(config.dist1, "mean") - one(config.dist2, "mean")

    s1 = one(config.dist1, "variance")
    s2 = one(config.dist2, "variance")
    if math.isinf(s2):
        if math.isinf(s1):
            raise ConfigurationError(
                f"Variance ratio of {config.dist1} and {config.dist2} is undefined at tau=0"
            )
        return 0.0
    return s1 / s2


def compute_interval(
    target: Target,
    view1: TrimmedView,
    view2: TrimmedView | None,
    config: StudyConfig,
) -> ConfidenceInterval:
    """The interval for target with the study's alpha, scaling and shape."""
    if target == "mean":
        return one_sample_mean_ci(view1, config.alpha, config.scaling_mode)
    if target == "variance":
        return one_sample_variance_ci(view1, config.alpha, config.scaling_mode)
    assert view2 is not None
    if target == "mean-difference":
        return two_sample_mean_diff_ci(view1, view2, config.alpha, config.scaling_mode)
    return two_sample_variance_ratio_ci(
        view1, view2, config.alpha, config.scaling_mode, config.interval_shape
    )


Cell = tuple[Target, float]
Outcome = tuple[bool, float] | None


def replicate(
    stream: int, config: StudyConfig, cells: Sequence[Cell], truths: Sequence[float]
) -> list[Outcome]:
    """
    One coverage replication: (covered, width) per cell, None where no
    interval could be formed.
    """
    seed = Seed(config.master_seed, stream)
    x1 = sample(config.dist1, config.n1, seed)
    x2 = None
    if config.needs_second_sample():
        x2 = sample(config.dist2, config.n2, seed.with_substream(1))  # type: ignore[arg-type]

    views: dict[float, tuple[TrimmedView, TrimmedView | None]] = {}
    outcomes: list[Outcome] = []
    for (target, tau), truth in zip(cells, truths, strict=True):
        try:
            if tau not in views:
                spec = config.trim_spec(tau)
                views[tau] = (
                    sort_and_trim(x1, spec),
                    None if x2 is None else sort_and_trim(x2, spec),
                )
            view1, view2 = views[tau]
            ci = compute_interval(target, view1, view2, config)
        except TfepError:
            outcomes.append(None)
            continue
        outcomes.append((ci.contains(truth), ci.width))
    return outcomes


def _replications(
    config: StudyConfig,
    cells: list[Cell],
    truths: list[float],
    progress_callback: ProgressCallback | None,
) -> Iterator[list[Outcome]]:
    work = partial(replicate, config=config, cells=cells, truths=truths)
    streams = range(config.replications)
    if config.workers == 1:
        for r in streams:
            yield work(r)
            if progress_callback:
                progress_callback("replication", r + 1, config.replications)
        return

    chunksize = max(1, config.replications // (config.workers * 8))
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        # map yields in submission order
        for i, outcome in enumerate(pool.map(work, streams, chunksize=chunksize)):
            yield outcome
            if progress_callback:
                progress_callback("replication", i + 1, config.replications)


def coverage_experiment(
    config: StudyConfig, progress_callback: ProgressCallback | None = None
) -> list[CoverageResult]:
    """
    Empirical coverage of each (target, tau) interval against its population value.

    Every true value is resolved before any sampling, so an unavailable
    oracle fails fast.

    Args:
        config: A coverage config.
        progress_callback: Called as callback(message, done, total) after each
            replication.

    Raises:
        ConfigurationError: If config.kind is not coverage or a true value is
            undefined.
    """
    if config.kind != "coverage":
        raise ConfigurationError(f"Expected a coverage config, got {config.kind}")

    targets = config.resolved_targets()
    if any(t in TWO_SAMPLE_TARGETS for t in targets) and config.dist2 is None:
        raise ConfigurationError("Two-sample coverage targets need dist2")

    cells: list[Cell] = [(target, tau) for target in targets for tau in config.tau_grid]
    truths = [true_value(config, target, tau) for target, tau in cells]

    logger.info(
        "Coverage study %s: %d replications, %d cells, master seed %d, %d worker(s)",
        _source(config),
        config.replications,
        len(cells),
        config.master_seed,
        config.workers,
    )

    hits = [0] * len(cells)
    failures = [0] * len(cells)
    widths: list[list[float]] = [[] for _ in cells]
    for outcomes in _replications(config, cells, truths, progress_callback):
        for i, outcome in enumerate(outcomes):
            if outcome is None:
                failures[i] += 1
                continue
            covered, width = outcome
            hits[i] += covered
            widths[i].append(width)

    results = []
    for i, ((target, tau), truth) in enumerate(zip(cells, truths, strict=True)):
        if failures[i]:
            logger.warning("%s at tau=%g: %d replication(s) failed", target, tau, failures[i])
        results.append(
            CoverageResult(
                target=target,
                tau=tau,
                nominal=1 - config.alpha,
                empirical_coverage=hits[i] / config.replications,
                mean_width=math.fsum(widths[i]) / len(widths[i]) if widths[i] else math.nan,
                replications=config.replications,
                failures=failures[i],
                true_value=truth,
                scaling_mode=config.scaling_mode,
                interval_shape=config.interval_shape,
            )
        )
    return results


def run_coverage_study(
    config: StudyConfig, progress_callback: ProgressCallback | None = None
) -> StudyResult:
    return StudyResult(
        kind="coverage",
        source=_source(config),
        master_seed=config.master_seed,
        config=config,
        rows=coverage_experiment(config, progress_callback),
    )


def run_study(
    config: StudyConfig, progress_callback: ProgressCallback | None = None
) -> StudyResult:
    """Run any study, dispatching on config.kind."""
    if config.kind == "one-sample":
        return run_one_sample_study(config)
    if config.kind == "two-sample":
        return run_two_sample_study(config)
    return run_coverage_study(config, progress_callback)
