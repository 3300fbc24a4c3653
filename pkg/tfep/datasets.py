"""
Loading observed samples from CSV files.

A DatasetRef points at one numeric column. Values come back in file order,
untouched apart from parsing; blank rows are skipped and counted, anything
else that is not a finite number is an error naming its row.

Usage:
    ref = DatasetRef.parse("data/dakar.csv:income")
    values = ingest_csv(ref)
    draws = subsample(values, 200, Seed(master=7))
"""

import logging
from pathlib import Path

import numpy as np
import pandas as pd
import regex as re
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from tfep.distributions import Seed
from tfep.errors import DataError, UsageError

logger = logging.getLogger(__name__)

# path[:column], where column is a name or a 0-based index; a drive letter
# like C:\ is not mistaken for a column.
_RE_REF = re.compile(r"^(?P<path>(?:[A-Za-z]:[\\/])?[^:]+?)(?::(?P<column>[^:]+))?$")

# Decimal or scientific notation, ASCII digits only. inf and nan match here and
# are rejected later as non-finite.
_RE_NUMBER = re.compile(
    r"[+-]?(?:(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?|(?i:inf(?:inity)?|nan))"
)


class DatasetRef(BaseModel):
    """One numeric column of a delimited text file."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    path: Path
    column: str | int = Field(default=0, description="Column name, or 0-based index")
    delimiter: str = Field(default=",", min_length=1, max_length=1)
    has_header: bool = True

    @classmethod
    def parse(cls, text: str, delimiter: str = ",", has_header: bool = True) -> "DatasetRef":
        """
        Parse ``path`` or ``path:column``.

        A purely numeric column is taken as an index.
        """
        match = _RE_REF.match(text.strip())
        if not match:
            raise UsageError(f"Cannot parse dataset reference {text!r}; expected path[:column]")
        column: str | int = match.group("column") or 0
        if isinstance(column, str) and column.isdigit():
            column = int(column)
        try:
            return cls(
                path=Path(match.group("path")),
                column=column,
                delimiter=delimiter,
                has_header=has_header,
            )
        except ValidationError as e:
            raise UsageError(f"Invalid dataset reference {text!r}: {e}") from e

    def __str__(self) -> str:
        return f"{self.path}:{self.column}"


def _select_column(df: pd.DataFrame, ref: DatasetRef) -> pd.Series:
    available = [str(c) for c in df.columns]
    if isinstance(ref.column, int):
        if not 0 <= ref.column < df.shape[1]:
            raise DataError(
                f"{ref.path}: no column {ref.column}; "
                f"{df.shape[1]} column(s) available: {', '.join(available)}"
            )
        return df.iloc[:, ref.column]
    if ref.column not in df.columns:
        raise DataError(
            f"{ref.path}: no column {ref.column!r}; available columns: {', '.join(available)}"
        )
    return df[ref.column]


def ingest_csv(ref: DatasetRef) -> np.ndarray:
    """
    Read one column as finite floats, in file order.

    Raises:
        DataError: If the file is missing, the column is missing, a cell is not
            a finite number, or fewer than 2 usable rows remain.
    """
    if not ref.path.exists():
        raise DataError(f"Data file not found: {ref.path}")

    try:
        df = pd.read_csv(
            ref.path,
            sep=ref.delimiter,
            header=0 if ref.has_header else None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
        )
    except pd.errors.EmptyDataError:
        df = pd.DataFrame()
    except pd.errors.ParserError as e:
        raise DataError(f"{ref.path}: {e}") from e

    if df.empty and df.shape[1] == 0:
        raise DataError(f"{ref.path}: fewer than 2 usable rows")

    column = _select_column(df, ref)
    first_data_row = 2 if ref.has_header else 1

    values: list[float] = []
    blank = 0
    for offset, cell in enumerate(column.tolist()):
        text = cell.strip(" \t") if isinstance(cell, str) else ""
        if not text:
            blank += 1
            continue
        row = offset + first_data_row
        if not _RE_NUMBER.fullmatch(text):
            raise DataError(f"{ref.path}: row {row}: non-numeric value {text!r}")
        value = float(text)
        if not np.isfinite(value):
            raise DataError(f"{ref.path}: row {row}: non-finite value {text!r}")
        values.append(value)

    if blank:
        logger.warning("%s: skipped %d blank row(s)", ref.path, blank)
    if len(values) < 2:
        raise DataError(f"{ref.path}: fewer than 2 usable rows")

    logger.debug("Loaded %d values from %s", len(values), ref)
    return np.array(values, dtype=np.float64)


def subsample(values: np.ndarray, t: int, seed: Seed) -> np.ndarray:
    """
    Simple random sample of t values without replacement.

    Raises:
        DataError: If t exceeds the number of values or is below 1.
    """
    arr = np.asarray(values, dtype=np.float64)
    if t < 1:
        raise DataError(f"Subsample size must be at least 1, got {t}")
    if t > arr.size:
        raise DataError(f"Cannot draw {t} values without replacement from {arr.size}")
    return seed.rng().choice(arr, size=t, replace=False)
