from __future__ import annotations

import io
import logging
from pathlib import Path

import pandas as pd

from lossyhom.errors import DatasetError
from lossyhom.experiment.counts import CountRecord, records_from_frame

logger = logging.getLogger(__name__)

SCHEMAS: dict[str, tuple[str, ...]] = {
    "material": ("theta_c", "branch", "T", "R", "A", "phi_rt"),
    "scan": ("tau_ps", "p11", "p20", "p02", "p_abs"),
    "counts": ("pair", "tau_ps", "counts", "expected"),
    "sweep": ("theta_c", "g2"),
    "states": ("theta_c", "phi_rt", "p11", "p20", "p02", "p_abs"),
}
FLOAT_FORMAT = "%.12g"


def validate_columns(frame: pd.DataFrame, schema: str) -> None:
    expected = SCHEMAS[schema]
    actual = tuple(frame.columns)
    if actual != expected:
        raise DatasetError(f"{schema} dataset columns mismatch: expected={list(expected)} actual={list(actual)}")


def to_csv_text(frame: pd.DataFrame, schema: str | None = None) -> str:
    if schema is not None:
        validate_columns(frame, schema)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def write_dataset(frame: pd.DataFrame, output_path: str | Path, schema: str | None = None) -> Path:
    """Write a dataset as CSV: header row, '.' decimals, 12 significant digits, LF endings."""
    text = to_csv_text(frame, schema)
    out = Path(output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(text.encode("utf-8"))
    logger.info("wrote %d rows to %s", len(frame), out)
    return out


def read_counts(path: str | Path) -> list[CountRecord]:
    source = Path(path)
    try:
        frame = pd.read_csv(source, dtype={"pair": str})
    except FileNotFoundError:
        raise DatasetError(f"{source}: file not found") from None
    except pd.errors.EmptyDataError:
        raise DatasetError(f"{source}: file is empty") from None
    except pd.errors.ParserError as exc:
        raise DatasetError(f"{source}: {exc}") from None
    validate_columns(frame, "counts")
    if frame.empty:
        raise DatasetError(f"{source}: no count rows")
    if frame.isna().any().any():
        raise DatasetError(f"{source}: missing values")
    try:
        return records_from_frame(frame)
    except (TypeError, ValueError) as exc:
        raise DatasetError(f"{source}: {exc}") from None
