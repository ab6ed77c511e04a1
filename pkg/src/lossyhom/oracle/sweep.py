from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from lossyhom.analytic.coincidence import p11, p_absorbed, p_bunch
from lossyhom.analytic.state import BiphotonState
from lossyhom.core.beam_splitter import BeamSplitter, random_physical_bs
from lossyhom.oracle.fock import fock_outcomes
from lossyhom.oracle.outcomes import CHANNELS, OutcomeDistribution
from lossyhom.oracle.quadrature import FrequencyGrid, quad_outcomes

logger = logging.getLogger(__name__)

ANALYTIC_CHANNELS: tuple[str, ...] = ("p11", "p20", "p02", "p_lost")
CROSS_TOL = 1e-7
DEGENERATE_FRACTION = 0.3
SEPARATION_SIGMAS = (9.0, 12.0)
SIGMA_RANGE = (0.5, 5.0)


@dataclass(frozen=True)
class OracleCase:
    index: int
    bs: BeamSplitter
    state: BiphotonState
    tau: float


@dataclass
class SweepReport:
    n_cases: int
    seed: int
    tol: float
    analytic_vs_quad: dict[str, float] = field(default_factory=dict)
    quad_vs_fock: dict[str, float] = field(default_factory=dict)
    max_norm_error: float = 0.0
    worst_case: int = -1

    @property
    def max_analytic_deviation(self) -> float:
        return max(self.analytic_vs_quad.values(), default=0.0)

    @property
    def max_cross_deviation(self) -> float:
        return max(self.quad_vs_fock.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_analytic_deviation <= self.tol and self.max_cross_deviation <= min(self.tol, CROSS_TOL)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {"comparison": "analytic_vs_quad", "channel": name, "max_abs_deviation": value}
            for name, value in self.analytic_vs_quad.items()
        ]
        rows += [
            {"comparison": "quad_vs_fock", "channel": name, "max_abs_deviation": value}
            for name, value in self.quad_vs_fock.items()
        ]
        return pd.DataFrame(rows, columns=["comparison", "channel", "max_abs_deviation"])


def draw_case(seed: int, index: int) -> OracleCase:
    """Random physical splitter plus a bin-separated (or exactly degenerate) source."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    bs = random_physical_bs(int(rng.integers(2**62)))
    sigma = float(rng.uniform(*SIGMA_RANGE))
    if rng.random() < DEGENERATE_FRACTION:
        delta, phi_omega = 0.0, 0.0
    else:
        delta = sigma * float(rng.uniform(*SEPARATION_SIGMAS))
        phi_omega = float(rng.uniform(-math.pi, math.pi))
    tau = float(rng.uniform(-3.0, 3.0)) / sigma
    return OracleCase(index=index, bs=bs, state=BiphotonState(delta, phi_omega, sigma), tau=tau)


def analytic_channels(bs: BeamSplitter, state: BiphotonState, tau: float) -> dict[str, float]:
    p20, p02 = p_bunch(bs, state, tau)
    return {
        "p11": p11(bs, state, tau),
        "p20": p20,
        "p02": p02,
        "p_lost": p_absorbed(bs, state, tau),
    }


def _quad_channels(outcome: OutcomeDistribution) -> dict[str, float]:
    return {"p11": outcome.p11, "p20": outcome.p20, "p02": outcome.p02, "p_lost": outcome.p_lost}


def fock_for_case(case: OracleCase) -> OutcomeDistribution:
    overlap = math.exp(-0.5 * (case.state.sigma * case.tau) ** 2)
    return fock_outcomes(case.bs, overlap, float(case.state.exchange_phase(case.tau)))


def sweep_check(n_cases: int = 1000, seed: int = 0, tol: float = 1e-6, grid: FrequencyGrid | None = None) -> SweepReport:
    """Compare the closed form against both oracles over randomly drawn physical cases."""
    if n_cases < 1:
        raise ValueError(f"n_cases must be >= 1, got {n_cases}.")
    if tol < 0.0:
        raise ValueError(f"tol must be >= 0, got {tol}.")
    grid = grid or FrequencyGrid()
    report = SweepReport(
        n_cases=n_cases,
        seed=seed,
        tol=tol,
        analytic_vs_quad=dict.fromkeys(ANALYTIC_CHANNELS, 0.0),
        quad_vs_fock=dict.fromkeys(CHANNELS, 0.0),
    )
    worst = -1.0
    for index in range(n_cases):
        case = draw_case(seed, index)
        quad = quad_outcomes(case.bs, case.state, case.tau, grid=grid)
        fock = fock_for_case(case)
        closed = analytic_channels(case.bs, case.state, case.tau)
        numeric = _quad_channels(quad)
        for name in ANALYTIC_CHANNELS:
            deviation = abs(closed[name] - numeric[name])
            report.analytic_vs_quad[name] = max(report.analytic_vs_quad[name], deviation)
            if deviation > worst:
                worst, report.worst_case = deviation, index
        for name in CHANNELS:
            deviation = abs(getattr(quad, name) - getattr(fock, name))
            report.quad_vs_fock[name] = max(report.quad_vs_fock[name], deviation)
        report.max_norm_error = max(report.max_norm_error, abs(quad.total - 1.0), abs(fock.total - 1.0))
    logger.info(
        "oracle sweep: %d cases, analytic/quad %.3e, quad/fock %.3e",
        n_cases,
        report.max_analytic_deviation,
        report.max_cross_deviation,
    )
    return report
