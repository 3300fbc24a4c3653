#!/usr/bin/env python3
"""
Command-line interface for tfep.

Usage:
    tfep diagnose --data incomes.csv:income
    tfep one-sample --data incomes.csv:income --subsample 200 --trim 0,0.1
    tfep one-sample --dist pareto:1,1.5 --n 10000 --trim 0,0.05,0.1,0.2
    tfep two-sample --dist1 normal:3,2 --dist2 normal:0,1 --ratio-interval log
    tfep coverage --dist pareto:1,1.5 --target mean --trim 0.1 --n 2000 --reps 2000
    tfep study --config experiments/configs/coverage_pareto.yaml --workers 4
    tfep reproduce --scenario pareto-1-1.5 --format markdown
    tfep list
    tfep info --scenario student-1
    tfep curves --data incomes.csv:income --kind qq

Exit status: 0 success, 2 usage or configuration error, 3 data error,
4 numerical or degenerate result.
"""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np
import regex as re
from tqdm import tqdm

from tfep.curves import ecdf_band, normal_qq
from tfep.datasets import DatasetRef, ingest_csv, subsample
from tfep.distributions import Seed, parse_distribution, resolve_master_seed
from tfep.errors import TfepError, UsageError
from tfep.estimators import diagnostics
from tfep.inference import SCALING_MODES, Target, parse_scaling_mode
from tfep.montecarlo import (
    StudyConfig,
    StudyResult,
    load_config,
    one_sample_rows,
    run_study,
    two_sample_rows,
)
from tfep.outputs import REPORT_FORMATS, emit_report, save_parquet
from tfep.registry import registry
from tfep.trimming import TrimSpec

logger = logging.getLogger(__name__)

# k=K,l=L carries its own comma, so it is matched before plain items
_RE_TRIM_ITEM = re.compile(r"\s*k\s*=\s*\d+\s*,\s*l\s*=\s*\d+|[^,]+")

_TARGETS: dict[str, Target] = {
    "mean": "mean",
    "variance": "variance",
    "mean-diff": "mean-difference",
    "mean-difference": "mean-difference",
    "var-ratio": "variance-ratio",
    "variance-ratio": "variance-ratio",
}


def setup_logging(verbose: bool = False) -> None:
    """Configure logging for CLI."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(levelname)s - %(message)s",
        datefmt="%H:%M:%S",
    )


def parse_trim_grid(text: str, trim_mode: str = "symmetric") -> list[TrimSpec]:
    """
    Parse a --trim value: comma-separated items of the TrimSpec grammar.

    "0,0.05,upper:0.1,k=3,l=97" gives four specs.
    """
    items = [item.strip() for item in _RE_TRIM_ITEM.findall(text) if item.strip()]
    if not items:
        raise UsageError(f"Empty trim grid {text!r}")
    return [TrimSpec.parse(item.replace(" ", ""), default_mode=trim_mode) for item in items]


def parse_targets(text: str) -> list[Target]:
    targets = []
    for item in text.split(","):
        name = item.strip()
        if name not in _TARGETS:
            known = "mean, variance, mean-diff, var-ratio"
            raise UsageError(f"Unknown target {name!r}; expected one of {known}")
        if _TARGETS[name] not in targets:
            targets.append(_TARGETS[name])
    return targets


def _tau_grid(trims: list[TrimSpec]) -> tuple[list[float], str]:
    """Plain tau levels and their common mode, for runs driven by a StudyConfig."""
    modes = {t.mode for t in trims}
    if "explicit" in modes or len(modes) > 1:
        raise UsageError(
            "Simulated runs take tau levels with one trim mode; explicit windows need --data"
        )
    return [t.tau for t in trims], modes.pop()


def _dataset(args: argparse.Namespace, text: str) -> DatasetRef:
    return DatasetRef.parse(text, delimiter=args.delimiter, has_header=not args.no_header)


def _load(args: argparse.Namespace, text: str, seed: Seed) -> tuple[np.ndarray, str]:
    ref = _dataset(args, text)
    values = ingest_csv(ref)
    source = str(ref)
    if args.subsample:
        values = subsample(values, args.subsample, seed)
        source += f" subsample T={args.subsample}"
    return values, source


def _write(args: argparse.Namespace, result) -> None:
    """Write a report to --out (csv, json, markdown or parquet) or stdout."""
    if args.out and Path(args.out).suffix == ".parquet":
        if not isinstance(result, StudyResult):
            raise UsageError("Only study tables can be written as parquet")
        path = save_parquet(result, args.out)
        print(f"Saved {len(result.rows)} rows to {path}")
        return

    text = emit_report(result, args.format, args.precision)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"Saved {args.format} report to {args.out}")
    else:
        sys.stdout.write(text)


def _progress_bar():
    """A tqdm-backed progress callback and a function closing its bar."""
    pbar = None

    def progress_callback(message: str, current: int, total: int) -> None:
        nonlocal pbar
        if pbar is None or pbar.total != total:
            if pbar:
                pbar.close()
            pbar = tqdm(total=total, desc="Replications", unit="rep", file=sys.stderr)
        pbar.n = current
        pbar.refresh()

    def close() -> None:
        if pbar:
            pbar.close()

    return progress_callback, close


def _run_with_progress(config: StudyConfig) -> StudyResult:
    if config.kind != "coverage":
        return run_study(config)
    callback, close = _progress_bar()
    try:
        return run_study(config, progress_callback=callback)
    finally:
        close()


# Commands


def cmd_diagnose(args: argparse.Namespace) -> int:
    """Summary statistics and Jarque-Bera test of a data column."""
    values = ingest_csv(_dataset(args, args.data))
    _write(args, diagnostics(values))
    return 0


def cmd_one_sample(args: argparse.Namespace) -> int:
    """Trimmed mean and variance intervals, from data or a simulated sample."""
    trims = parse_trim_grid(args.trim, args.trim_mode)
    scaling = parse_scaling_mode(args.scaling)
    master = resolve_master_seed(args.seed)

    if args.data:
        values, source = _load(args, args.data, Seed(master))
        result = StudyResult(
            kind="one-sample",
            source=source,
            master_seed=master if args.subsample else None,
            rows=one_sample_rows(values, trims, args.alpha, scaling, args.trim_mode),
        )
    elif args.dist:
        tau_grid, mode = _tau_grid(trims)
        config = StudyConfig.create(
            kind="one-sample",
            dist1=parse_distribution(args.dist),
            n1=args.n,
            tau_grid=tau_grid,
            trim_mode=mode,
            alpha=args.alpha,
            scaling_mode=scaling,
            master_seed=master,
        )
        result = run_study(config)
    else:
        raise UsageError("one-sample needs --data or --dist")

    _write(args, result)
    return 0


def cmd_two_sample(args: argparse.Namespace) -> int:
    """Variance-ratio and mean-difference intervals for two samples."""
    trims = parse_trim_grid(args.trim, args.trim_mode)
    scaling = parse_scaling_mode(args.scaling)
    master = resolve_master_seed(args.seed)

    if args.data1 or args.data2:
        if not (args.data1 and args.data2):
            raise UsageError("two-sample needs both --data1 and --data2")
        seed = Seed(master)
        values1, source1 = _load(args, args.data1, seed)
        values2, source2 = _load(args, args.data2, seed.with_substream(1))
        result = StudyResult(
            kind="two-sample",
            source=f"{source1} vs {source2}",
            master_seed=master if args.subsample else None,
            rows=two_sample_rows(
                values1,
                values2,
                trims,
                args.alpha,
                scaling,
                args.trim_mode,
                args.ratio_interval,
            ),
        )
    elif args.dist1 and args.dist2:
        tau_grid, mode = _tau_grid(trims)
        config = StudyConfig.create(
            kind="two-sample",
            dist1=parse_distribution(args.dist1),
            dist2=parse_distribution(args.dist2),
            n1=args.n1,
            n2=args.n2 or args.n1,
            tau_grid=tau_grid,
            trim_mode=mode,
            alpha=args.alpha,
            scaling_mode=scaling,
            interval_shape=args.ratio_interval,
            master_seed=master,
        )
        result = run_study(config)
    else:
        raise UsageError("two-sample needs --data1/--data2 or --dist1/--dist2")

    _write(args, result)
    return 0


def cmd_coverage(args: argparse.Namespace) -> int:
    """Monte Carlo coverage of the intervals."""
    tau_grid, mode = _tau_grid(parse_trim_grid(args.trim, args.trim_mode))
    data = {
        "name": "coverage",
        "kind": "coverage",
        "dist1": parse_distribution(args.dist),
        "n1": args.n,
        "tau_grid": tau_grid,
        "trim_mode": mode,
        "alpha": args.alpha,
        "replications": args.reps,
        "scaling_mode": parse_scaling_mode(args.scaling),
        "interval_shape": args.ratio_interval,
        "targets": parse_targets(args.target),
        "workers": args.workers,
        "master_seed": resolve_master_seed(args.seed),
    }
    if args.dist2:
        data["dist2"] = parse_distribution(args.dist2)
        data["n2"] = args.n2 or args.n
    _write(args, _run_with_progress(StudyConfig.create(**data)))
    return 0


def cmd_study(args: argparse.Namespace) -> int:
    """Run a study described by a YAML config."""
    config = load_config(args.config)
    update = {}
    if args.seed is not None:
        update["master_seed"] = args.seed
    if args.workers is not None:
        update["workers"] = args.workers
    if update:
        config = StudyConfig.create(**{**config.model_dump(), **update})

    logger.info(
        "Study %s (%s), master seed %d", config.name or args.config, config.kind, config.master_seed
    )
    _write(args, _run_with_progress(config))
    return 0


def cmd_reproduce(args: argparse.Namespace) -> int:
    """Rerun a published scenario and set its printed values beside ours."""
    scenario_cls = registry.get(args.scenario)
    scenario = scenario_cls()
    result = scenario.run(
        resolve_master_seed(args.seed),
        n=args.n,
        scaling_mode=parse_scaling_mode(args.scaling),
    )
    _write(args, scenario.compare(result))
    return 0


def cmd_list(args: argparse.Namespace) -> int:
    """List available scenarios."""
    collections = registry.collections()
    if args.collection:
        scenarios = collections.get(args.collection, [])
        if not scenarios:
            print(f"No scenarios found in collection: {args.collection}")
            return 2

        print(f"Collection: {args.collection} ({len(scenarios)} scenarios)")
        print("-" * 60)
        for cls in scenarios:
            print(f"  {cls.key}: {cls.title}")
    else:
        print(f"Registered collections: {len(collections)}")
        print("-" * 60)
        for coll, members in collections.items():
            print(f"  {coll}: {len(members)} scenarios")
            for cls in members:
                print(f"    {cls.key}: {cls.title}")

    return 0


def cmd_info(args: argparse.Namespace) -> int:
    """Show info about a specific scenario."""
    scenario_cls = registry.get(args.scenario)
    info = scenario_cls().describe()
    print(f"Key: {info['key']}")
    print(f"Title: {info['title']}")
    print(f"Kind: {info['kind']}")
    print(f"Sample 1: {info['dist1']}")
    if info["dist2"]:
        print(f"Sample 2: {info['dist2']}")
    print(f"Size: {info['n']}")
    print(f"Trimming levels: {', '.join(f'{t:g}' for t in info['tau_grid'])}")
    print(f"Ratio interval: {info['interval_shape']}")
    if scenario_cls.notes:
        print(f"\nNotes:\n{scenario_cls.notes.strip()}")

    return 0


def cmd_curves(args: argparse.Namespace) -> int:
    """Plot-ready ECDF band or normal Q-Q points of a data column."""
    values = ingest_csv(_dataset(args, args.data))
    if args.kind == "qq":
        points = normal_qq(values)
    else:
        trim = TrimSpec.parse(args.trim, default_mode=args.trim_mode) if args.trim else None
        points = ecdf_band(values, trim, args.alpha)
    _write(args, points)
    return 0


# Parser


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", "-f", choices=REPORT_FORMATS, default="csv")
    common.add_argument("--out", "-o", help="Output file; .parquet writes a study table")
    common.add_argument(
        "--trim-mode",
        choices=["symmetric", "upper", "lower"],
        default="symmetric",
        help="Mode for --trim items that do not name one",
    )
    common.add_argument("--precision", type=int, default=3, help="Decimals in csv/markdown")
    common.add_argument(
        "--seed", type=int, default=None, help="Master seed (default: $TFEP_SEED or 20240101)"
    )
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    return common


def _data_parser() -> argparse.ArgumentParser:
    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--delimiter", default=",", help="CSV field delimiter")
    data.add_argument("--no-header", action="store_true", help="The file has no header row")
    return data


def _interval_parser() -> argparse.ArgumentParser:
    interval = argparse.ArgumentParser(add_help=False)
    interval.add_argument("--trim", default="0,0.05,0.1,0.2", help="Comma-separated trim grid")
    interval.add_argument("--alpha", type=float, default=0.05, help="1 - confidence level")
    interval.add_argument(
        "--scaling",
        default="delta-corrected",
        help=f"Standard-error scaling: delta, paper or influence ({', '.join(SCALING_MODES)})",
    )
    interval.add_argument(
        "--ratio-interval",
        choices=["symmetric", "log"],
        default="symmetric",
        help="Shape of variance-ratio intervals",
    )
    return interval


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tfep",
        description="Trimmed-moment inference for heavy-tailed data.",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    common, data, interval = _common_parser(), _data_parser(), _interval_parser()

    # diagnose command
    diag = subparsers.add_parser(
        "diagnose", parents=[common, data], help="Summary statistics and normality test"
    )
    diag.add_argument("--data", required=True, help="CSV column as path[:column]")
    diag.set_defaults(func=cmd_diagnose)

    # one-sample command
    one = subparsers.add_parser(
        "one-sample", parents=[common, data, interval], help="Trimmed mean and variance CIs"
    )
    source = one.add_mutually_exclusive_group()
    source.add_argument("--data", help="CSV column as path[:column]")
    source.add_argument("--dist", help="Distribution to simulate, e.g. pareto:1,1.5")
    one.add_argument("--subsample", type=int, help="Draw T values without replacement first")
    one.add_argument("--n", type=int, default=10000, help="Simulated sample size")
    one.set_defaults(func=cmd_one_sample)

    # two-sample command
    two = subparsers.add_parser(
        "two-sample", parents=[common, data, interval], help="Variance ratio and mean difference"
    )
    first = two.add_mutually_exclusive_group()
    first.add_argument("--data1", help="First CSV column")
    first.add_argument("--dist1", help="First distribution")
    second = two.add_mutually_exclusive_group()
    second.add_argument("--data2", help="Second CSV column")
    second.add_argument("--dist2", help="Second distribution")
    two.add_argument("--subsample", type=int, help="Draw T values from each file first")
    two.add_argument("--n1", type=int, default=10000, help="First sample size")
    two.add_argument("--n2", type=int, help="Second sample size (default: n1)")
    two.set_defaults(func=cmd_two_sample)

    # coverage command
    cov = subparsers.add_parser(
        "coverage", parents=[common, interval], help="Monte Carlo coverage of the CIs"
    )
    cov.add_argument("--dist", required=True, help="Law of the first sample")
    cov.add_argument("--dist2", help="Law of the second sample (two-sample targets)")
    cov.add_argument(
        "--target", default="mean,variance", help="mean, variance, mean-diff, var-ratio"
    )
    cov.add_argument("--n", type=int, default=2000, help="First sample size")
    cov.add_argument("--n2", type=int, help="Second sample size (default: n)")
    cov.add_argument("--reps", type=int, default=1000, help="Replications")
    cov.add_argument("--workers", type=int, default=1, help="Worker processes")
    cov.set_defaults(func=cmd_coverage)

    # study command
    study = subparsers.add_parser("study", parents=[common], help="Run a YAML study config")
    study.add_argument("--config", "-c", required=True, help="Path to YAML config file")
    study.add_argument("--workers", type=int, help="Override the config's worker count")
    study.set_defaults(func=cmd_study)

    # reproduce command
    rep = subparsers.add_parser(
        "reproduce", parents=[common], help="Rerun a published scenario"
    )
    rep.add_argument("--scenario", "-s", required=True, help="Scenario key (see tfep list)")
    rep.add_argument("--n", type=int, help="Override the sample size")
    rep.add_argument("--scaling", default="delta-corrected", help="delta, paper or influence")
    rep.set_defaults(func=cmd_reproduce)

    # list command
    list_parser = subparsers.add_parser("list", help="List available scenarios")
    list_parser.add_argument("--collection", "-c", help="List only this collection")
    list_parser.set_defaults(func=cmd_list)

    # info command
    info_parser = subparsers.add_parser("info", help="Show info about a scenario")
    info_parser.add_argument("--scenario", "-s", required=True, help="Scenario key")
    info_parser.set_defaults(func=cmd_info)

    # curves command
    curves = subparsers.add_parser(
        "curves", parents=[common, data], help="Plot-ready ECDF band or Q-Q points"
    )
    curves.add_argument("--data", required=True, help="CSV column as path[:column]")
    curves.add_argument("--kind", choices=["ecdf", "qq"], default="ecdf")
    curves.add_argument("--trim", help="Trim applied before the ECDF, e.g. 0.1")
    curves.add_argument("--alpha", type=float, default=0.05, help="Pointwise band level")
    curves.set_defaults(func=cmd_curves)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not hasattr(args, "func"):
        parser.print_help()
        return 0

    setup_logging(getattr(args, "verbose", False))
    try:
        return args.func(args)
    except TfepError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
