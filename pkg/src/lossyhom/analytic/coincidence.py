from __future__ import annotations

import math
from typing import Literal

import numpy as np

from lossyhom.analytic.state import BiphotonState
from lossyhom.core.beam_splitter import BeamSplitter, require_physical
from lossyhom.errors import ZeroBaseline

Convention = Literal["physical", "as_published"]
CONVENTIONS: tuple[str, ...] = ("physical", "as_published")


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}.")


def _scalar_or_array(value: np.ndarray, tau) -> float | np.ndarray:
    return float(value) if np.ndim(tau) == 0 else value


def baseline_p11(bs: BeamSplitter) -> float:
    """Cross-port coincidence probability of fully distinguishable photons."""
    return bs.transmittance**2 + bs.reflectance**2


def p11(bs: BeamSplitter, state: BiphotonState, tau, convention: Convention = "physical"):
    """Probability that the photons leave through opposite ports.

    ``physical`` is the amplitude-level result, in which the exchange phase enters as
    cos(2 phi_rt) cos(delta tau + phi_omega); ``as_published`` keeps the combined
    cos(delta tau + 2 phi_rt + phi_omega). Both agree whenever phi_rt is a multiple of pi/2.
    """
    _check_convention(convention)
    require_physical(bs)
    tau = np.asarray(tau, dtype=float)
    t2, r2 = bs.transmittance, bs.reflectance
    phase = state.exchange_phase(tau)
    if convention == "physical":
        fringe = math.cos(2.0 * bs.phi_rt) * np.cos(phase)
    else:
        fringe = np.cos(phase + 2.0 * bs.phi_rt)
    value = t2**2 + r2**2 + 2.0 * t2 * r2 * fringe * state.envelope(tau)
    return _scalar_or_array(value, tau)


def p_bunch(bs: BeamSplitter, state: BiphotonState, tau, convention: Convention = "physical"):
    """(p20, p02): both photons in port a, both in port b. Independent of phi_rt."""
    _check_convention(convention)
    require_physical(bs)
    tau = np.asarray(tau, dtype=float)
    t2, r2 = bs.transmittance, bs.reflectance
    published = 2.0 * t2 * r2 * (1.0 + np.cos(state.exchange_phase(tau)) * state.envelope(tau))
    value = published if convention == "as_published" else 0.5 * published
    value = _scalar_or_array(value, tau)
    return value, value


def p_absorbed(bs: BeamSplitter, state: BiphotonState, tau):
    """Probability that at least one photon is absorbed by the splitter."""
    cross = np.asarray(p11(bs, state, tau))
    p20, p02 = p_bunch(bs, state, tau)
    value = np.clip(1.0 - cross - np.asarray(p20) - np.asarray(p02), 0.0, 1.0)
    return _scalar_or_array(value, tau)


def g2_zero(bs: BeamSplitter, state: BiphotonState) -> float:
    """Zero-delay cross-port coincidence normalised by its far-delay baseline."""
    require_physical(bs)
    baseline = baseline_p11(bs)
    if baseline <= 0.0:
        raise ZeroBaseline("No splitting: |t|^4 + |r|^4 = 0, g2(0) is undefined.")
    return p11(bs, state, 0.0) / baseline
