"""Dataset bundles behind each figure of a VO2 splitter measurement campaign."""
from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
import pandas as pd

from lossyhom.analytic.coincidence import p11, p_absorbed, p_bunch
from lossyhom.core.beam_splitter import BeamSplitter
from lossyhom.experiment.counts import DetectorConfig, records_to_frame, simulate_counts
from lossyhom.experiment.source import PRESETS, SourceSetting, preset
from lossyhom.experiment.sweep import g2_sweep
from lossyhom.material import Branch, HysteresisModel, SplitterSource, VO2Film, run_thermal_cycle, splitter_for

logger = logging.getLogger(__name__)

FIGURES = ("fig2_states", "fig3_scans", "fig4_scans", "fig5_sweep")
FIGURE_THETAS = (40.0, 65.5, 80.0)
SWEEP_THETAS = tuple(float(theta) for theta in np.arange(25.0, 95.0 + 0.25, 0.5))
PREHEAT_THETA = 95.0


@dataclass
class FigureConfig:
    source: SplitterSource = field(default_factory=HysteresisModel)
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    tau_min: float = -2.0
    tau_max: float = 2.0
    n_points: int = 201
    thetas: tuple[float, ...] = FIGURE_THETAS
    seed: int = 0

    def tau_grid(self) -> np.ndarray:
        if self.n_points < 2 or not self.tau_min < self.tau_max:
            raise ValueError("Scan needs n_points >= 2 and tau_min < tau_max.")
        return np.linspace(self.tau_min, self.tau_max, self.n_points)


@dataclass
class FigureManifest:
    fig_id: str
    seed: int
    branch: str
    thetas: list[float]
    settings: list[dict[str, Any]]
    files: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, payload: str) -> "FigureManifest":
        return cls(**json.loads(payload))


@dataclass
class FigureBundle:
    manifest: FigureManifest
    datasets: dict[str, pd.DataFrame]


def _label(theta: float) -> str:
    return f"{theta:g}".replace(".", "p")


def _states_table(source: SplitterSource, setting: SourceSetting, thetas: tuple[float, ...]) -> pd.DataFrame:
    state = setting.state()
    rows = []
    for theta in thetas:
        bs = splitter_for(source, theta, Branch.HEATING)
        p20, p02 = p_bunch(bs, state, 0.0)
        rows.append(
            {
                "theta_c": theta,
                "phi_rt": bs.phi_rt,
                "p11": p11(bs, state, 0.0),
                "p20": p20,
                "p02": p02,
                "p_abs": p_absorbed(bs, state, 0.0),
            }
        )
    return pd.DataFrame(rows, columns=["theta_c", "phi_rt", "p11", "p20", "p02", "p_abs"])


def _cooling_splitters(source: SplitterSource, thetas: tuple[float, ...]) -> dict[float, BeamSplitter]:
    """Splitters met while cooling from the preheat temperature through ``thetas`` (descending)."""
    ordered = sorted(thetas, reverse=True)
    if not isinstance(source, HysteresisModel):
        return {theta: splitter_for(source, theta, Branch.COOLING) for theta in ordered}
    film = VO2Film(source, theta=25.0)
    snapshots = run_thermal_cycle(film, [PREHEAT_THETA, *ordered])[1:]
    return {
        snap.theta: BeamSplitter.from_intensities(snap.transmittance, snap.reflectance, snap.phi_rt)
        for snap in snapshots
    }


def _scan_datasets(prefix: str, splitters: dict[float, BeamSplitter], config: FigureConfig) -> dict[str, pd.DataFrame]:
    datasets: dict[str, pd.DataFrame] = {}
    taus = config.tau_grid()
    index = 0
    for setting in PRESETS.values():
        for theta in config.thetas:
            records = simulate_counts(splitters[theta], setting.state(), config.detector, taus, seed=config.seed * 10_000 + index)
            datasets[f"{prefix}_{setting.name}_{_label(theta)}"] = records_to_frame(records)
            index += 1
    return datasets


def reproduce_figure(fig_id: str, config: FigureConfig | None = None) -> FigureBundle:
    config = config or FigureConfig()
    if fig_id not in FIGURES:
        raise ValueError(f"Unknown figure {fig_id!r}; choose from {', '.join(FIGURES)}.")
    thetas = tuple(float(theta) for theta in config.thetas)
    branch = Branch.COOLING if fig_id == "fig4_scans" else Branch.HEATING
    settings = list(PRESETS.values())

    if fig_id == "fig2_states":
        datasets = {f"fig2_{s.name}": _states_table(config.source, s, thetas) for s in settings}
    elif fig_id == "fig3_scans":
        splitters = {theta: splitter_for(config.source, theta, Branch.HEATING) for theta in thetas}
        datasets = _scan_datasets("fig3", splitters, config)
    elif fig_id == "fig4_scans":
        datasets = _scan_datasets("fig4", _cooling_splitters(config.source, thetas), config)
    else:
        thetas = SWEEP_THETAS
        settings = [preset("symmetric_degenerate")]
        datasets = {"fig5_sweep": g2_sweep(config.source, settings[0], thetas, Branch.HEATING)}

    manifest = FigureManifest(
        fig_id=fig_id,
        seed=config.seed,
        branch=branch.value,
        thetas=list(thetas),
        settings=[s.as_dict() for s in settings],
        files=[f"{name}.csv" for name in datasets],
    )
    logger.info("%s: %d datasets", fig_id, len(datasets))
    return FigureBundle(manifest=manifest, datasets=datasets)
