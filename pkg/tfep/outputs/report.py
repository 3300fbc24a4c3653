"""
Report rendering: CSV, JSON and Markdown.

Every report type flattens to a pandas DataFrame for CSV and Markdown, with
numbers rounded to ``precision`` decimals. JSON is pydantic's dump at full
precision. Output depends only on the report, so rendering the same result
twice gives identical text.
"""

import math
from collections.abc import Sequence
from typing import Any, Literal

import pandas as pd
from pydantic import BaseModel, TypeAdapter

from tfep.base import ScenarioComparison
from tfep.curves import EcdfPoint, QQPoint
from tfep.errors import UsageError
from tfep.estimators import DiagnosticsReport
from tfep.inference import ConfidenceInterval
from tfep.montecarlo.schema import CoverageResult, OneSampleRow, StudyResult, TwoSampleRow

ReportFormat = Literal["csv", "json", "markdown"]
REPORT_FORMATS: tuple[str, ...] = ("csv", "json", "markdown")

Report = (
    StudyResult
    | ConfidenceInterval
    | DiagnosticsReport
    | ScenarioComparison
    | list[EcdfPoint]
    | list[QQPoint]
)


# Tables

_COUNT_COLUMNS = ("k_n", "l_n", "n_tau", "n1_tau", "n2_tau", "replications", "failures")


def _ci_columns(prefix: str, ci: ConfidenceInterval | None) -> dict[str, float | None]:
    row = dict.fromkeys(("estimate", "lower", "upper", "width")) if ci is None else ci.to_row()
    return {
        prefix: row["estimate"],
        f"{prefix}_lower": row["lower"],
        f"{prefix}_upper": row["upper"],
        f"{prefix}_width": row["width"],
    }


def _study_records(result: StudyResult) -> list[dict[str, Any]]:
    records = []
    for row in result.rows:
        if isinstance(row, OneSampleRow):
            records.append(
                {
                    "tau": row.tau,
                    "k_n": row.k_n,
                    "l_n": row.l_n,
                    "n_tau": row.n_tau,
                    **_ci_columns("mean", row.mean_ci),
                    **_ci_columns("variance", row.variance_ci),
                    "error": row.error,
                }
            )
        elif isinstance(row, TwoSampleRow):
            records.append(
                {
                    "tau": row.tau,
                    "n1_tau": row.n1_tau,
                    "n2_tau": row.n2_tau,
                    **_ci_columns("ratio", row.ratio_ci),
                    **_ci_columns("mean_diff", row.mean_diff_ci),
                    "error": row.error,
                }
            )
        else:
            records.append(row.model_dump())
    return records


def to_frame(result: Report) -> pd.DataFrame:
    """Flatten a report to one row per table line."""
    if isinstance(result, StudyResult):
        frame = pd.DataFrame(_study_records(result))
        counts = [c for c in _COUNT_COLUMNS if c in frame.columns]
        return frame.astype({c: "Int64" for c in counts})
    if isinstance(result, ConfidenceInterval):
        context = result.model_dump(
            include={"target", "method", "scaling_mode", "interval_shape", "n_tau"}
        )
        row = {**result.to_row(), **context, "warnings": ";".join(result.warnings)}
        return pd.DataFrame([row])
    if isinstance(result, DiagnosticsReport):
        return pd.DataFrame([result.to_row()])
    if isinstance(result, ScenarioComparison):
        records = [{**r.model_dump(), "covers": r.reference_in_interval} for r in result.rows]
        return pd.DataFrame(records)
    if isinstance(result, list):
        return pd.DataFrame([point.model_dump() for point in result])
    raise UsageError(f"Cannot render a report of type {type(result).__name__}")


def _seed_of(result: Report) -> int | None:
    if isinstance(result, StudyResult | ScenarioComparison):
        return result.master_seed
    return None


def _render_csv(result: Report, precision: int) -> str:
    header = ""
    seed = _seed_of(result)
    if seed is not None:
        header = f"# tfep master_seed={seed}\n"
    body = to_frame(result).to_csv(
        index=False, float_format=f"%.{precision}f", lineterminator="\n"
    )
    return header + body


# JSON


def _render_json(result: Report) -> str:
    if isinstance(result, BaseModel):
        return result.model_dump_json(indent=2) + "\n"
    if result and isinstance(result[0], QQPoint):
        adapter: TypeAdapter = TypeAdapter(list[QQPoint])
    else:
        adapter = TypeAdapter(list[EcdfPoint])
    return adapter.dump_json(result, indent=2).decode() + "\n"


# Markdown


def _num(value: float | None, precision: int) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{precision}f}"


def _ci_text(ci: ConfidenceInterval | None, precision: int) -> str:
    if ci is None:
        return "-"
    return f"[{_num(ci.lower, precision)}, {_num(ci.upper, precision)}]"


def _level(tau: float) -> str:
    return f"{tau * 100:g}%"


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def _study_markdown(result: StudyResult, p: int) -> str:
    title = f"**{result.source}**"
    if result.master_seed is not None:
        title += f" (master seed {result.master_seed})"

    rows: list[list[str]] = []
    notes: list[str] = []
    if result.kind == "one-sample":
        header = ["Level", "Mean", "CI", "Width", "Variance", "CI", "Width"]
        for row in result.rows:
            assert isinstance(row, OneSampleRow)
            m, v = row.mean_ci, row.variance_ci
            rows.append(
                [
                    _level(row.tau),
                    _num(None if m is None else m.estimate, p),
                    _ci_text(m, p),
                    _num(None if m is None else m.width, p),
                    _num(None if v is None else v.estimate, p),
                    _ci_text(v, p),
                    _num(None if v is None else v.width, p),
                ]
            )
            if row.error:
                notes.append(f"{_level(row.tau)}: {row.error}")
    elif result.kind == "two-sample":
        header = ["Level", "R", "CI", "Width", "Δμ", "CI", "Width"]
        for row in result.rows:
            assert isinstance(row, TwoSampleRow)
            r, d = row.ratio_ci, row.mean_diff_ci
            rows.append(
                [
                    _level(row.tau),
                    _num(None if r is None else r.estimate, p),
                    _ci_text(r, p),
                    _num(None if r is None else r.width, p),
                    _num(None if d is None else d.estimate, p),
                    _ci_text(d, p),
                    _num(None if d is None else d.width, p),
                ]
            )
            if row.error:
                notes.append(f"{_level(row.tau)}: {row.error}")
    else:
        header = ["Target", "Level", "Nominal", "Coverage", "SE", "Mean width", "Failures"]
        for row in result.rows:
            assert isinstance(row, CoverageResult)
            rows.append(
                [
                    row.target,
                    _level(row.tau),
                    _num(row.nominal, p),
                    _num(row.empirical_coverage, p),
                    _num(row.coverage_se, p),
                    _num(row.mean_width, p),
                    str(row.failures),
                ]
            )

    text = f"{title}\n\n{_table(header, rows)}"
    if notes:
        text += "\n" + "\n".join(f"- {note}" for note in notes) + "\n"
    return text


def _comparison_markdown(result: ScenarioComparison, p: int) -> str:
    header = ["Level", "Quantity", "Printed", "Printed CI", "Estimate", "CI", "Covers printed"]
    rows = []
    for r in result.rows:
        covers = r.reference_in_interval
        rows.append(
            [
                _level(r.tau),
                r.quantity,
                _num(r.reference, p),
                f"[{_num(r.reference_lower, p)}, {_num(r.reference_upper, p)}]",
                _num(r.estimate, p),
                "-" if r.lower is None else f"[{_num(r.lower, p)}, {_num(r.upper, p)}]",
                "-" if covers is None else ("yes" if covers else "no"),
            ]
        )
    text = f"**{result.title}** ({result.key}, master seed {result.master_seed})\n\n"
    text += _table(header, rows)
    if result.notes:
        text += "\n" + result.notes + "\n"
    return text


def _render_markdown(result: Report, precision: int) -> str:
    if isinstance(result, StudyResult):
        return _study_markdown(result, precision)
    if isinstance(result, ScenarioComparison):
        return _comparison_markdown(result, precision)
    if isinstance(result, ConfidenceInterval):
        header = ["Level", "Estimate", "CI", "Width"]
        row = [
            _num(result.level, precision),
            _num(result.estimate, precision),
            _ci_text(result, precision),
            _num(result.width, precision),
        ]
        return _table(header, [row])
    if isinstance(result, DiagnosticsReport):
        header = ["n", "Mean", "Median", "Std. Dev.", "Skewness", "Kurtosis", "JB p-value"]
        values = result.to_row()
        row = [str(result.n)] + [_num(values[c], precision) for c in result.csv_columns[1:]]
        return _table(header, [row])

    frame = to_frame(result)
    rows = [[_num(float(v), precision) for v in rec] for rec in frame.itertuples(index=False)]
    return _table(list(frame.columns), rows)


def emit_report(result: Report, fmt: str = "csv", precision: int = 3) -> str:
    """
    Serialize a report.

    Args:
        result: A study result, interval, diagnostics report, scenario
            comparison or list of curve points.
        fmt: csv, json or markdown.
        precision: Decimals for csv and markdown; json keeps full precision.

    Raises:
        UsageError: For an unknown format or a negative precision.
    """
    if fmt not in REPORT_FORMATS:
        raise UsageError(f"Unknown format {fmt!r}; expected one of {', '.join(REPORT_FORMATS)}")
    if precision < 0:
        raise UsageError(f"precision must be non-negative, got {precision}")

    if fmt == "json":
        return _render_json(result)
    if fmt == "csv":
        return _render_csv(result, precision)
    return _render_markdown(result, precision)
