from __future__ import annotations

from typing import Union

from lossyhom.core.beam_splitter import BeamSplitter
from lossyhom.material.calibration import CalibrationTable
from lossyhom.material.hysteresis import Branch, HysteresisModel, exchange_phase_at, splitter_at, tra_at

SplitterSource = Union[HysteresisModel, CalibrationTable]


def splitter_for(source: SplitterSource, theta: float, branch: Branch | str = Branch.HEATING) -> BeamSplitter:
    """Splitter at theta from either the phenomenological model or a measured table."""
    if isinstance(source, CalibrationTable):
        return source.splitter_at(theta)
    return splitter_at(source, theta, branch)


def response_for(source: SplitterSource, theta: float, branch: Branch | str = Branch.HEATING) -> tuple[float, float, float, float]:
    """(T, R, A, phi_rt) at theta."""
    if isinstance(source, CalibrationTable):
        return (*source.tra_at(theta), source.exchange_phase_at(theta))
    return (*tra_at(source, theta, branch), exchange_phase_at(source, theta, branch))
