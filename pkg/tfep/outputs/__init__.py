"""
Output formatters for reports and study tables.

Handles conversion to various output formats:
- CSV, JSON and Markdown (reports)
- Parquet (study tables)
"""

from tfep.outputs.parquet import load_parquet, save_parquet
from tfep.outputs.report import REPORT_FORMATS, emit_report, to_frame

__all__ = ["REPORT_FORMATS", "emit_report", "load_parquet", "save_parquet", "to_frame"]
