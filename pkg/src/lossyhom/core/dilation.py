from __future__ import annotations

import numpy as np

from lossyhom.core.beam_splitter import BeamSplitter, require_physical, scattering_matrix

# Port order of the dilated unitary: two optical ports, then their absorption (environment) modes.
PORT_A, PORT_B, ENV_A, ENV_B = range(4)


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(matrix)
    values = np.clip(values, 0.0, None)
    return (vectors * np.sqrt(values)) @ vectors.conj().T


def unitary_dilation(bs: BeamSplitter) -> np.ndarray:
    """4x4 unitary whose upper-left block is the (possibly lossy) scattering matrix.

    The off-diagonal blocks couple each optical port to the environment modes so
    that absorbed amplitude is carried away with vacuum input on the environment side.
    """
    require_physical(bs)
    s = scattering_matrix(bs)
    identity = np.eye(2)
    defect_out = _psd_sqrt(identity - s @ s.conj().T)
    defect_in = _psd_sqrt(identity - s.conj().T @ s)
    return np.block([[s, defect_out], [defect_in, -s.conj().T]])


def dilation_residual(u: np.ndarray) -> float:
    return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))


def singular_values(bs: BeamSplitter) -> np.ndarray:
    return np.linalg.svd(scattering_matrix(bs), compute_uv=False)
