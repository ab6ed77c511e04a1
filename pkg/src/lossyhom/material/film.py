from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Iterable

from lossyhom.core.beam_splitter import BeamSplitter
from lossyhom.material.hysteresis import Branch, HysteresisModel, exchange_phase_at, splitter_at, tra_at

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FilmSnapshot:
    theta: float
    branch: str
    transmittance: float
    reflectance: float
    absorbance: float
    phi_rt: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, payload: str) -> "FilmSnapshot":
        return cls(**json.loads(payload))


@dataclass
class VO2Film:
    """A film that remembers its thermal history: the branch follows the last temperature change."""

    model: HysteresisModel = field(default_factory=HysteresisModel)
    theta: float = 25.0
    branch: Branch = Branch.HEATING

    def set_temperature(self, theta: float) -> Branch:
        if theta > self.theta:
            self.branch = Branch.HEATING
        elif theta < self.theta:
            self.branch = Branch.COOLING
        self.theta = float(theta)
        return self.branch

    def splitter(self) -> BeamSplitter:
        return splitter_at(self.model, self.theta, self.branch)

    def snapshot(self) -> FilmSnapshot:
        transmittance, reflectance, absorbance = tra_at(self.model, self.theta, self.branch)
        return FilmSnapshot(
            theta=self.theta,
            branch=self.branch.value,
            transmittance=transmittance,
            reflectance=reflectance,
            absorbance=absorbance,
            phi_rt=exchange_phase_at(self.model, self.theta, self.branch),
        )


def run_thermal_cycle(film: VO2Film, temperatures: Iterable[float]) -> list[FilmSnapshot]:
    """Drive the film through ``temperatures`` and record its state after every step."""
    snapshots: list[FilmSnapshot] = []
    for theta in temperatures:
        film.set_temperature(theta)
        snapshots.append(film.snapshot())
    logger.debug("thermal cycle: %d steps, final %.2f C on %s branch", len(snapshots), film.theta, film.branch.value)
    return snapshots
