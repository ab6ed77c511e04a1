from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from lossyhom.analytic.state import BiphotonState
from lossyhom.core.beam_splitter import BeamSplitter
from lossyhom.core.dilation import PORT_A, PORT_B, unitary_dilation
from lossyhom.errors import GridTooCoarse, StateVanishes
from lossyhom.oracle.outcomes import OutcomeDistribution, distribution_from_port_table

logger = logging.getLogger(__name__)

CONVERGENCE_TOL = 1e-7
VANISHING_NORM = 1e-12


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform frequency grid: n_points across +/- span_sigmas around each bin centre."""

    n_points: int = 512
    span_sigmas: float = 6.0

    def __post_init__(self) -> None:
        if self.n_points < 64:
            raise ValueError(f"n_points must be >= 64, got {self.n_points}.")
        if self.span_sigmas < 4:
            raise ValueError(f"span_sigmas must be >= 4, got {self.span_sigmas}.")

    def refined(self) -> "FrequencyGrid":
        return FrequencyGrid(n_points=2 * self.n_points, span_sigmas=self.span_sigmas)

    def axis(self, state: BiphotonState) -> np.ndarray:
        half_width = self.span_sigmas * state.sigma
        spacing = 2.0 * half_width / (self.n_points - 1)
        low = -0.5 * state.delta - half_width
        high = 0.5 * state.delta + half_width
        count = int(math.ceil((high - low) / spacing - 1e-9)) + 1
        return low + spacing * np.arange(count)


def _wavepacket(omega: np.ndarray, centre: float, sigma: float) -> np.ndarray:
    # |amplitude|^2 is a Gaussian of RMS width sigma.
    amplitude = np.exp(-((omega - centre) ** 2) / (4.0 * sigma**2)).astype(complex)
    return amplitude / math.sqrt(trapezoid(np.abs(amplitude) ** 2, omega))


def _gram(vectors: np.ndarray, omega: np.ndarray) -> np.ndarray:
    return trapezoid(vectors.conj()[:, None, :] * vectors[None, :, :], omega, axis=-1)


def _port_table(u: np.ndarray, state: BiphotonState, tau: float, grid: FrequencyGrid) -> np.ndarray:
    omega = grid.axis(state)
    low_bin, high_bin = -0.5 * state.delta, 0.5 * state.delta
    delay = np.exp(1j * omega * tau)
    packets = np.stack(
        [
            _wavepacket(omega, low_bin, state.sigma) * delay,  # 0: w1 in delayed port a
            _wavepacket(omega, high_bin, state.sigma) * delay,  # 1: w2 in delayed port a
            _wavepacket(omega, low_bin, state.sigma),  # 2: w1 in port b
            _wavepacket(omega, high_bin, state.sigma),  # 3: w2 in port b
        ]
    )
    gram = _gram(packets, omega)

    # Joint amplitude J(x, y) = sum_k c_k u_k(x) v_k(y), x in port a and y in port b.
    coeffs = np.array([1.0, np.exp(1j * state.phi_omega)]) / math.sqrt(2.0)
    in_a = (0, 1)
    in_b = (3, 2)
    norm = 0.0 + 0.0j
    exchange = 0.0 + 0.0j
    for k in range(2):
        for l in range(2):
            weight = np.conj(coeffs[k]) * coeffs[l]
            norm += weight * gram[in_a[k], in_a[l]] * gram[in_b[k], in_b[l]]
            exchange += weight * gram[in_a[k], in_b[l]] * gram[in_b[k], in_a[l]]
    if abs(norm) < VANISHING_NORM:
        raise StateVanishes("The two-photon input has zero norm (degenerate bins with phi_omega = pi).")
    norm_real = norm.real
    exchange_real = exchange.real

    col_a, col_b = u[:, PORT_A], u[:, PORT_B]
    table = np.zeros((4, 4))
    for m in range(4):
        for n in range(m, 4):
            if m == n:
                weight = abs(col_a[m] * col_b[m]) ** 2
                table[m, n] = weight * (norm_real + exchange_real)
            else:
                direct = col_a[m] * col_b[n]
                swapped = col_a[n] * col_b[m]
                table[m, n] = (abs(direct) ** 2 + abs(swapped) ** 2) * norm_real + 2.0 * (
                    np.conj(direct) * swapped * exchange
                ).real
    return table / norm_real


def quad_outcomes(
    bs: BeamSplitter,
    state: BiphotonState,
    tau: float,
    grid: FrequencyGrid | None = None,
    check_convergence: bool = True,
) -> OutcomeDistribution:
    """Outcome probabilities from continuous-mode wavepackets integrated on a frequency grid.

    Each photon's creation operator is propagated through the dilated unitary, path
    alternatives are summed with bosonic symmetrisation, and every overlap integral is
    evaluated by trapezoidal quadrature.
    """
    grid = grid or FrequencyGrid()
    u = unitary_dilation(bs)
    table = _port_table(u, state, tau, grid)
    if check_convergence:
        change = float(np.max(np.abs(_port_table(u, state, tau, grid.refined()) - table)))
        if change > CONVERGENCE_TOL:
            raise GridTooCoarse(change, grid.n_points)
        logger.debug("quadrature grid %d points stable to %.2e", grid.n_points, change)
    return distribution_from_port_table(table)
