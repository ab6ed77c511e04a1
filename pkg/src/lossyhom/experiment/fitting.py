"""Least-squares fitting of coincidence scans.

Model: B * [1 - exp(-sigma^2 u^2) * (c cos(delta u) + s sin(delta u))], u = tau - tau0.
c is the signed visibility (positive for a dip) and atan2(s, c) the fringe phase.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np
from scipy.optimize import least_squares

from lossyhom.errors import DegenerateData, NoConvergence
from lossyhom.experiment.counts import CountRecord

logger = logging.getLogger(__name__)

MIN_POINTS = 20
VISIBILITY_CAP = 1.5
MAX_EVALUATIONS = 200
STEP_TOL = 1e-8
STALL_TOL = 1e-4
GRID_DELTAS = 16
GRID_SIGMA_SCALES = (0.25, 0.5, 1.0, 2.0)
GRID_OFFSETS = 32
N_STARTS = 3

Observable = Literal["counts", "expected"]


@dataclass(frozen=True)
class FitHint:
    """Expected source parameters (rad/ps); delta = 0 fixes a fringe-free envelope."""

    delta: float
    sigma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta) and self.delta >= 0.0):
            raise ValueError(f"hint delta must be >= 0, got {self.delta}.")
        if not (math.isfinite(self.sigma) and self.sigma > 0.0):
            raise ValueError(f"hint sigma must be > 0, got {self.sigma}.")


@dataclass(frozen=True)
class FitResult:
    pair: str
    baseline: float
    visibility: float
    delta_hat: float
    sigma_hat: float
    tau0_hat: float
    phase_hat: float
    residual_rms: float
    n_points: int
    evaluations: int


def scan_model(taus, baseline: float, c: float, s: float, delta: float, sigma: float, tau0: float) -> np.ndarray:
    u = np.asarray(taus, dtype=float) - tau0
    envelope = np.exp(-(sigma**2) * u**2)
    return baseline * (1.0 - envelope * (c * np.cos(delta * u) + s * np.sin(delta * u)))


def _jacobian(params: np.ndarray, taus: np.ndarray) -> np.ndarray:
    baseline, c, s, delta, sigma, tau0 = params
    u = taus - tau0
    envelope = np.exp(-(sigma**2) * u**2)
    cos_u, sin_u = np.cos(delta * u), np.sin(delta * u)
    fringe = c * cos_u + s * sin_u
    quadrature = s * cos_u - c * sin_u
    return np.column_stack(
        [
            1.0 - envelope * fringe,
            -baseline * envelope * cos_u,
            -baseline * envelope * sin_u,
            -baseline * envelope * u * quadrature,
            2.0 * baseline * fringe * envelope * sigma * u**2,
            baseline * envelope * (-2.0 * sigma**2 * u * fringe + delta * quadrature),
        ]
    )


def _coarse_grid(taus: np.ndarray, values: np.ndarray, hint: FitHint) -> list[np.ndarray]:
    """Linear solve for (B, Bc, Bs) at every (delta, sigma, tau0) node; best nodes first."""
    deltas = np.linspace(0.0, 2.0 * hint.delta, GRID_DELTAS) if hint.delta > 0.0 else np.zeros(1)
    sigmas = hint.sigma * np.array(GRID_SIGMA_SCALES)
    offsets = np.linspace(taus[0], taus[-1], GRID_OFFSETS)
    nodes = np.array(np.meshgrid(deltas, sigmas, offsets, indexing="ij")).reshape(3, -1).T

    u = taus[None, :] - nodes[:, 2:3]
    envelope = np.exp(-(nodes[:, 1:2] ** 2) * u**2)
    columns = [np.ones_like(u), -envelope * np.cos(nodes[:, 0:1] * u)]
    if hint.delta > 0.0:
        columns.append(-envelope * np.sin(nodes[:, 0:1] * u))
    design = np.stack(columns, axis=-1)
    coeffs = np.einsum("nkt,t->nk", np.linalg.pinv(design), values)
    residual = np.einsum("ntk,nk->nt", design, coeffs) - values[None, :]
    cost = np.sum(residual**2, axis=1)
    cost[coeffs[:, 0] <= 0.0] = np.inf

    starts: list[np.ndarray] = []
    for index in np.argsort(cost, kind="stable"):
        if not np.isfinite(cost[index]) or len(starts) == N_STARTS:
            break
        baseline = coeffs[index, 0]
        c = coeffs[index, 1] / baseline
        s = coeffs[index, 2] / baseline if hint.delta > 0.0 else 0.0
        delta, sigma, tau0 = nodes[index]
        starts.append(np.array([baseline, c, s, delta, sigma, tau0]))
    return starts


class _Problem:
    """Residuals and Jacobian with delta and s optionally pinned to zero."""

    def __init__(self, taus: np.ndarray, values: np.ndarray, fringes: bool) -> None:
        self.taus = taus
        self.values = values
        self.free = np.array([0, 1, 2, 3, 4, 5]) if fringes else np.array([0, 1, 4, 5])

    def expand(self, x: np.ndarray) -> np.ndarray:
        params = np.zeros(6)
        params[self.free] = x
        return params

    def residuals(self, x: np.ndarray) -> np.ndarray:
        return scan_model(self.taus, *self.expand(x)) - self.values

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        return _jacobian(self.expand(x), self.taus)[:, self.free]

    def bounds(self, sigma_hint: float) -> tuple[np.ndarray, np.ndarray]:
        lower = np.array([0.0, -VISIBILITY_CAP, -VISIBILITY_CAP, 0.0, 1e-6 * sigma_hint, self.taus[0]])
        upper = np.array([np.inf, VISIBILITY_CAP, VISIBILITY_CAP, np.inf, np.inf, self.taus[-1]])
        return lower[self.free], upper[self.free]

    def solve(self, start: np.ndarray, sigma_hint: float, max_nfev: int):
        lower, upper = self.bounds(sigma_hint)
        x0 = np.clip(start[self.free], lower, upper)
        return least_squares(
            self.residuals,
            x0,
            jac=self.jacobian,
            bounds=(lower, upper),
            method="trf",
            x_scale="jac",
            xtol=STEP_TOL,
            ftol=1e-12,
            gtol=1e-12,
            max_nfev=max_nfev,
        )


def _series(records: Iterable[CountRecord], observable: Observable) -> tuple[str, np.ndarray, np.ndarray]:
    records = sorted(records, key=lambda r: r.tau)
    pairs = {r.pair for r in records}
    if len(pairs) > 1:
        raise ValueError(f"fit_scan takes one detector pair at a time, got {sorted(pairs)}.")
    if len(records) < MIN_POINTS:
        raise DegenerateData(f"Need at least {MIN_POINTS} delay points, got {len(records)}.")
    taus = np.array([r.tau for r in records], dtype=float)
    values = np.array([getattr(r, observable) for r in records], dtype=float)
    if not np.any(values > 0.0):
        raise DegenerateData(f"Pair {records[0].pair} recorded no coincidences.")
    return records[0].pair, taus, values


def fit_scan(records: Iterable[CountRecord], hint: FitHint, observable: Observable = "counts") -> FitResult:
    """Fit one pair's delay scan: coarse grid seeding, then bounded trust-region refinement."""
    pair, taus, values = _series(records, observable)
    reach = 5.0 / hint.sigma
    if taus[0] > -reach or taus[-1] < reach:
        logger.warning("pair %s: scan [%g, %g] ps is narrower than +/-5/sigma; baseline may be biased", pair, taus[0], taus[-1])

    starts = _coarse_grid(taus, values, hint)
    if not starts:
        raise DegenerateData(f"Pair {pair}: no grid node gives a positive baseline.")
    problem = _Problem(taus, values, fringes=hint.delta > 0.0)
    best = min((problem.solve(start, hint.sigma, MAX_EVALUATIONS) for start in starts), key=lambda fit: fit.cost)

    if best.status == 0:
        probe = problem.solve(best.x, hint.sigma, 10)
        step = float(np.linalg.norm(probe.x - best.x) / max(np.linalg.norm(best.x), 1e-300))
        if step > STALL_TOL:
            raise NoConvergence(f"Pair {pair}: still moving after {MAX_EVALUATIONS} evaluations (relative step {step:.2e}).")

    baseline, c, s, delta, sigma, tau0 = problem.expand(best.x)
    logger.info("pair %s: fit status %d after %d evaluations, cost %.4g", pair, best.status, best.nfev, best.cost)
    return FitResult(
        pair=pair,
        baseline=float(baseline),
        visibility=float(c),
        delta_hat=float(delta),
        sigma_hat=float(sigma),
        tau0_hat=float(tau0),
        phase_hat=math.atan2(s, c),
        residual_rms=float(np.sqrt(np.mean(best.fun**2))),
        n_points=len(taus),
        evaluations=int(best.nfev),
    )
