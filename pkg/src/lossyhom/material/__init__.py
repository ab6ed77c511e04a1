from lossyhom.material.calibration import CalibrationTable, load_calibration
from lossyhom.material.film import FilmSnapshot, VO2Film, run_thermal_cycle
from lossyhom.material.hysteresis import (
    Branch,
    HysteresisModel,
    clamp_exchange_phase,
    exchange_phase_at,
    saturating_logistic,
    splitter_at,
    tra_at,
)
from lossyhom.material.response import SplitterSource, response_for, splitter_for
from lossyhom.material.thin_film import (
    FilmStack,
    Layer,
    LayerStack,
    airy_single_layer,
    effective_index,
    film_tra,
    splitter_from_stack,
    tmm_stack,
)

__all__ = [
    "Branch",
    "CalibrationTable",
    "FilmSnapshot",
    "FilmStack",
    "HysteresisModel",
    "Layer",
    "LayerStack",
    "SplitterSource",
    "VO2Film",
    "airy_single_layer",
    "clamp_exchange_phase",
    "effective_index",
    "exchange_phase_at",
    "film_tra",
    "load_calibration",
    "response_for",
    "run_thermal_cycle",
    "saturating_logistic",
    "splitter_at",
    "splitter_for",
    "splitter_from_stack",
    "tmm_stack",
    "tra_at",
]
