from __future__ import annotations

import math

import numpy as np

from lossyhom.core.beam_splitter import BeamSplitter
from lossyhom.core.dilation import PORT_A, PORT_B, unitary_dilation
from lossyhom.oracle.outcomes import OutcomeDistribution, distribution_from_port_table

# Internal modes per spatial port: frequency bin (2) x temporal tag (2).
_INTERNAL = 4


def _internal_index(frequency_bin: int, tag: int) -> int:
    return 2 * frequency_bin + tag


def _input_terms(overlap: float, phi_total: float) -> dict[tuple[int, int], complex]:
    """Two-photon input as {(mode_in_a, mode_in_b): coefficient}.

    The port-b photon carries tag 0; the delayed port-a photon carries
    overlap |0> + sqrt(1 - overlap^2) |1>.
    """
    tag_weights = ((0, overlap), (1, math.sqrt(max(0.0, 1.0 - overlap**2))))
    orderings = ((0, 1, 1.0 / math.sqrt(2.0)), (1, 0, np.exp(1j * phi_total) / math.sqrt(2.0)))
    terms: dict[tuple[int, int], complex] = {}
    for bin_a, bin_b, coeff in orderings:
        mode_b = PORT_B * _INTERNAL + _internal_index(bin_b, 0)
        for tag, weight in tag_weights:
            if weight == 0.0:
                continue
            mode_a = PORT_A * _INTERNAL + _internal_index(bin_a, tag)
            terms[(mode_a, mode_b)] = terms.get((mode_a, mode_b), 0.0) + coeff * weight
    return terms


def fock_outcomes(bs: BeamSplitter, overlap: float, phi_total: float) -> OutcomeDistribution:
    """Exact outcome probabilities by enumerating two-photon Fock configurations.

    ``overlap`` is the single-photon temporal-mode overlap between the two arms and
    ``phi_total`` the relative phase of the two frequency-bin orderings. Output
    amplitudes are 2x2 permanents of the dilated unitary acting on every internal mode.
    """
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap}.")
    full = np.kron(unitary_dilation(bs), np.eye(_INTERNAL))
    terms = _input_terms(overlap, phi_total)
    cols_a = np.array([mode_a for mode_a, _ in terms])
    cols_b = np.array([mode_b for _, mode_b in terms])
    coeffs = np.array(list(terms.values()), dtype=complex)

    # amplitude[m, n] = sum_terms c * perm(U[[m, n]][:, [p, q]])
    amplitude = (full[:, cols_a] * coeffs) @ full[:, cols_b].T + (full[:, cols_b] * coeffs) @ full[:, cols_a].T
    probability = np.abs(amplitude) ** 2
    probability = np.triu(probability)
    probability[np.diag_indices_from(probability)] *= 0.5

    ports = np.arange(full.shape[0]) // _INTERNAL
    table = np.zeros((4, 4))
    for m, n in zip(*np.nonzero(probability)):
        first, second = sorted((int(ports[m]), int(ports[n])))
        table[first, second] += probability[m, n]
    return distribution_from_port_table(table)
