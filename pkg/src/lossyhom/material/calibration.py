from __future__ import annotations

import csv
import io
import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO

import numpy as np

from lossyhom.core.beam_splitter import BeamSplitter, clamp_to_arc, require_physical
from lossyhom.errors import NonMonotonic, ParseError, RowNotNormalized
from lossyhom.material.hysteresis import clamp_exchange_phase

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("theta", "t", "r", "a")
OPTIONAL_COLUMNS = ("phi_rt",)
NORMALIZATION_TOL = 0.02
# Measured phases this close to the passivity arc (in cos phi_rt) are snapped onto it.
PHASE_SNAP_TOL = 1e-9


def normalize_column_name(name: str) -> str:
    cleaned = re.sub(r"[^0-9a-zA-Z]+", "_", name.strip().lower())
    return re.sub(r"_+", "_", cleaned).strip("_")


def _to_number(value: str | None, line: int, column: str) -> float:
    if value is None or value.strip() == "":
        raise ParseError(line, f"missing value for '{column}'")
    try:
        number = float(value.strip())
    except ValueError:
        raise ParseError(line, f"'{column}' is not a number: {value.strip()!r}") from None
    if not math.isfinite(number):
        raise ParseError(line, f"'{column}' must be finite, got {value.strip()!r}")
    return number


@dataclass(frozen=True)
class CalibrationTable:
    """Measured film response versus temperature, linearly interpolated between rows."""

    theta: tuple[float, ...]
    transmittance: tuple[float, ...]
    reflectance: tuple[float, ...]
    absorbance: tuple[float, ...]
    phi_rt: tuple[float, ...] | None = None

    def __len__(self) -> int:
        return len(self.theta)

    def _interp(self, column: tuple[float, ...], theta: float) -> float:
        # np.interp holds the end values constant outside the table.
        return float(np.interp(theta, self.theta, column))

    def tra_at(self, theta: float) -> tuple[float, float, float]:
        return (
            self._interp(self.transmittance, theta),
            self._interp(self.reflectance, theta),
            self._interp(self.absorbance, theta),
        )

    def exchange_phase_at(self, theta: float) -> float:
        transmittance, reflectance, _ = self._normalized(theta)
        if self.phi_rt is not None:
            measured = self._interp(self.phi_rt, theta)
            snapped = clamp_to_arc(measured, math.sqrt(transmittance), math.sqrt(reflectance))
            return snapped if abs(math.cos(measured) - math.cos(snapped)) <= PHASE_SNAP_TOL else measured
        low, high = min(self.absorbance), max(self.absorbance)
        progress = 0.0 if high == low else (self._interp(self.absorbance, theta) - low) / (high - low)
        return clamp_exchange_phase(0.5 * math.pi * (1.0 + progress), transmittance, reflectance)

    def _normalized(self, theta: float) -> tuple[float, float, float]:
        transmittance, reflectance, absorbance = self.tra_at(theta)
        total = transmittance + reflectance + absorbance
        return transmittance / total, reflectance / total, absorbance / total

    def splitter_at(self, theta: float) -> BeamSplitter:
        transmittance, reflectance, _ = self._normalized(theta)
        bs = BeamSplitter.from_intensities(transmittance, reflectance, self.exchange_phase_at(theta))
        require_physical(bs)
        return bs


def _read_text(source: bytes | str | Path | BinaryIO) -> str:
    if isinstance(source, bytes):
        payload = source
    elif isinstance(source, (str, Path)):
        payload = Path(source).read_bytes()
    else:
        payload = source.read()
    try:
        return payload.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(1, f"calibration file is not UTF-8 ({exc.reason})") from None


def load_calibration(source: bytes | str | Path | BinaryIO) -> CalibrationTable:
    """Parse a ``theta,T,R,A[,phi_rt]`` CSV (bytes, path or binary stream) into a validated table."""
    reader = csv.DictReader(io.StringIO(_read_text(source)))
    if reader.fieldnames is None:
        raise ParseError(1, "CSV has no header row.")
    columns = {normalize_column_name(name): name for name in reader.fieldnames}
    missing = [name for name in REQUIRED_COLUMNS if name not in columns]
    if missing:
        raise ParseError(1, f"missing column(s) {', '.join(missing)}; expected theta,T,R,A[,phi_rt]")
    unknown = sorted(set(columns) - set(REQUIRED_COLUMNS) - set(OPTIONAL_COLUMNS))
    if unknown:
        raise ParseError(1, f"unexpected column(s) {', '.join(unknown)}")
    has_phase = "phi_rt" in columns

    rows: list[tuple[float, ...]] = []
    for row in reader:
        line = reader.line_num
        if None in row:
            raise ParseError(line, "too many fields")
        theta, t, r, a = (_to_number(row[columns[name]], line, name) for name in REQUIRED_COLUMNS)
        for name, value in (("T", t), ("R", r), ("A", a)):
            if not 0.0 <= value <= 1.0:
                raise ParseError(line, f"{name}={value} is outside [0, 1]")
        total = t + r + a
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise RowNotNormalized(line, total)
        phase = _to_number(row[columns["phi_rt"]], line, "phi_rt") if has_phase else math.nan
        if rows and theta <= rows[-1][0]:
            raise NonMonotonic(len(rows), theta)
        rows.append((theta, t, r, a, phase))

    if not rows:
        raise ParseError(2, "calibration table has no data rows")
    theta, t, r, a, phase = zip(*rows)
    logger.info("loaded %d calibration rows spanning %.1f-%.1f C", len(rows), theta[0], theta[-1])
    return CalibrationTable(theta, t, r, a, phase if has_phase else None)
