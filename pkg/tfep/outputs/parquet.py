"""
Parquet output format.

Used for study tables that feed later analysis. The master seed travels in
the file's schema metadata.
"""

from pathlib import Path

import pandas as pd
import pyarrow as pa
import pyarrow.parquet as pq

from tfep.montecarlo.schema import StudyResult
from tfep.outputs.report import to_frame

SEED_METADATA_KEY = b"tfep.master_seed"
SOURCE_METADATA_KEY = b"tfep.source"


def save_parquet(
    result: StudyResult,
    output_path: Path | str,
    compression: str = "zstd",
) -> Path:
    """
    Save a study table to parquet.

    Args:
        result: A finished study.
        output_path: Where to save the parquet file.
        compression: Compression algorithm (zstd, snappy, gzip, none).

    Returns:
        Path to the saved file.
    """
    if not result.rows:
        raise ValueError("study has no rows")

    output_path = Path(output_path)
    table = pa.Table.from_pandas(to_frame(result), preserve_index=False)
    metadata = dict(table.schema.metadata or {})
    metadata[SOURCE_METADATA_KEY] = result.source.encode()
    if result.master_seed is not None:
        metadata[SEED_METADATA_KEY] = str(result.master_seed).encode()
    pq.write_table(table.replace_schema_metadata(metadata), output_path, compression=compression)
    return output_path


def load_parquet(path: Path | str) -> pd.DataFrame:
    """
    Load a study table from parquet.

    The master seed and source, when present, are in ``frame.attrs``.
    """
    table = pq.read_table(path)
    frame = table.to_pandas()
    metadata = table.schema.metadata or {}
    if SEED_METADATA_KEY in metadata:
        frame.attrs["master_seed"] = int(metadata[SEED_METADATA_KEY])
    if SOURCE_METADATA_KEY in metadata:
        frame.attrs["source"] = metadata[SOURCE_METADATA_KEY].decode()
    return frame
