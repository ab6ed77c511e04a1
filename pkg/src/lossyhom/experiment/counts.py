from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np
import pandas as pd

from lossyhom.analytic.coincidence import p11, p_bunch
from lossyhom.analytic.state import BiphotonState
from lossyhom.core.beam_splitter import BeamSplitter, require_physical
from lossyhom.errors import UnknownPair

Side = Literal["same_side", "opposite_side"]

# A and B watch output port a, C and D watch output port b.
DETECTORS = ("A", "B", "C", "D")
PAIRS: tuple[str, ...] = ("AB", "CD", "AC", "AD", "BC", "BD")
COINCIDENCE_WINDOW_S = 1e-9


def classify(pair: str) -> Side:
    if pair in ("AB", "CD"):
        return "same_side"
    if pair in ("AC", "AD", "BC", "BD"):
        return "opposite_side"
    raise UnknownPair(f"Unknown detector pair {pair!r}; expected one of {', '.join(PAIRS)}.")


@dataclass(frozen=True)
class DetectorConfig:
    eta: dict[str, float] = field(default_factory=lambda: dict.fromkeys(DETECTORS, 1.0))
    fiber_split: float = 0.5
    dark_rate: dict[str, float] = field(default_factory=lambda: dict.fromkeys(DETECTORS, 0.0))
    pair_rate: float = 1.0e5
    t_int: float = 1.0

    def __post_init__(self) -> None:
        for name, mapping in (("eta", self.eta), ("dark_rate", self.dark_rate)):
            if set(mapping) != set(DETECTORS):
                raise ValueError(f"{name} needs exactly the detectors {DETECTORS}, got {sorted(mapping)}.")
        for label, value in self.eta.items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"eta[{label}] must lie in [0, 1], got {value}.")
        for label, value in self.dark_rate.items():
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"dark_rate[{label}] must be >= 0, got {value}.")
        if not 0.0 <= self.fiber_split <= 1.0:
            raise ValueError(f"fiber_split must lie in [0, 1], got {self.fiber_split}.")
        if not (math.isfinite(self.pair_rate) and self.pair_rate >= 0.0):
            raise ValueError(f"pair_rate must be >= 0, got {self.pair_rate}.")
        if not (math.isfinite(self.t_int) and self.t_int > 0.0):
            raise ValueError(f"t_int must be > 0, got {self.t_int}.")

    def route(self, detector: str) -> float:
        """Probability that a photon in the detector's output port reaches that detector."""
        return self.fiber_split if detector in ("A", "C") else 1.0 - self.fiber_split

    def accidentals(self, pair: str) -> float:
        return self.dark_rate[pair[0]] * self.dark_rate[pair[1]] * COINCIDENCE_WINDOW_S


@dataclass(frozen=True)
class CountRecord:
    pair: str
    tau: float
    counts: int
    expected: float

    def __post_init__(self) -> None:
        classify(self.pair)
        if self.counts < 0:
            raise ValueError(f"counts must be >= 0, got {self.counts}.")


def expected_rates(bs: BeamSplitter, state: BiphotonState, tau: float, det: DetectorConfig) -> dict[str, float]:
    """Coincidence rate (1/s) for every detector pair at delay tau."""
    require_physical(bs)
    cross = p11(bs, state, tau)
    p20, p02 = p_bunch(bs, state, tau)
    rates: dict[str, float] = {}
    for pair in PAIRS:
        first, second = pair
        efficiency = det.eta[first] * det.eta[second]
        if classify(pair) == "same_side":
            probability = p20 if pair == "AB" else p02
            # the two photons take different fiber arms, in either order
            routing = 2.0 * det.route(first) * det.route(second)
        else:
            probability = cross
            routing = det.route(first) * det.route(second)
        rates[pair] = det.pair_rate * probability * routing * efficiency + det.accidentals(pair)
    return rates


def simulate_counts(
    bs: BeamSplitter, state: BiphotonState, det: DetectorConfig, tau_grid: Iterable[float], seed: int = 0
) -> list[CountRecord]:
    """Poisson coincidence counts per pair and delay; each delay draws from its own seeded stream."""
    require_physical(bs)
    records: list[CountRecord] = []
    for index, tau in enumerate(tau_grid):
        rates = expected_rates(bs, state, float(tau), det)
        means = np.array([rates[pair] * det.t_int for pair in PAIRS])
        rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
        draws = rng.poisson(means)
        records.extend(
            CountRecord(pair, float(tau), int(count), float(mean)) for pair, count, mean in zip(PAIRS, draws, means)
        )
    return records


def records_to_frame(records: Iterable[CountRecord]) -> pd.DataFrame:
    rows = [{"pair": r.pair, "tau_ps": r.tau, "counts": r.counts, "expected": r.expected} for r in records]
    return pd.DataFrame(rows, columns=["pair", "tau_ps", "counts", "expected"])


def records_from_frame(frame: pd.DataFrame) -> list[CountRecord]:
    return [
        CountRecord(str(row.pair), float(row.tau_ps), int(row.counts), float(row.expected))
        for row in frame.itertuples(index=False)
    ]
