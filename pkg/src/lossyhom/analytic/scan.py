from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
import pandas as pd

from lossyhom.analytic.coincidence import p11, p_absorbed, p_bunch
from lossyhom.analytic.state import BiphotonState
from lossyhom.core.beam_splitter import BeamSplitter
from lossyhom.errors import BaselineTooShort, ZeroBaseline

Channel = Literal["cross", "same"]

BASELINE_SIGMAS = 5.0
BASELINE_FRACTION = 0.10


@dataclass(frozen=True)
class HOMScanPoint:
    tau: float
    p11: float
    p20: float
    p02: float
    p_abs: float


@dataclass(frozen=True)
class HOMScan:
    points: tuple[HOMScanPoint, ...]
    bs: BeamSplitter
    state: BiphotonState

    def __post_init__(self) -> None:
        taus = self.taus
        if np.any(np.diff(taus) <= 0.0):
            raise ValueError("Scan delays must be strictly increasing.")

    @property
    def taus(self) -> np.ndarray:
        return np.array([p.tau for p in self.points], dtype=float)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points], dtype=float)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "tau_ps": self.taus,
                "p11": self.column("p11"),
                "p20": self.column("p20"),
                "p02": self.column("p02"),
                "p_abs": self.column("p_abs"),
            }
        )


def hom_scan(bs: BeamSplitter, state: BiphotonState, tau_min: float, tau_max: float, n: int) -> HOMScan:
    if n < 2:
        raise ValueError(f"A scan needs at least 2 points, got {n}.")
    if not tau_min < tau_max:
        raise ValueError(f"tau_min ({tau_min}) must be smaller than tau_max ({tau_max}).")
    taus = np.linspace(tau_min, tau_max, n)
    cross = p11(bs, state, taus)
    p20, p02 = p_bunch(bs, state, taus)
    absorbed = p_absorbed(bs, state, taus)
    points = tuple(
        HOMScanPoint(float(tau), float(a), float(b), float(c), float(d))
        for tau, a, b, c, d in zip(taus, cross, p20, p02, absorbed)
    )
    return HOMScan(points=points, bs=bs, state=state)


def visibility(scan: HOMScan, channel: Channel = "cross") -> float:
    """Signed visibility (P_base - P(0)) / P_base: positive for a dip, negative for a peak."""
    taus = scan.taus
    reach = BASELINE_SIGMAS / scan.state.sigma
    if taus[0] > -reach + 1e-12 or taus[-1] < reach - 1e-12:
        raise BaselineTooShort(
            f"Scan [{taus[0]:g}, {taus[-1]:g}] ps does not reach +/-{reach:g} ps (5/sigma) on both sides."
        )
    if channel == "cross":
        values = scan.column("p11")
    elif channel == "same":
        values = scan.column("p20") + scan.column("p02")
    else:
        raise ValueError(f"channel must be 'cross' or 'same', got {channel!r}.")

    per_side = max(1, int(round(0.5 * BASELINE_FRACTION * len(values))))
    baseline = float(np.mean(np.concatenate([values[:per_side], values[-per_side:]])))
    if baseline <= 0.0:
        raise ZeroBaseline(f"The {channel} channel has no far-delay baseline.")
    at_zero = float(np.interp(0.0, taus, values))
    return (baseline - at_zero) / baseline
