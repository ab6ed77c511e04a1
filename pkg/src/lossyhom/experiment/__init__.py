from lossyhom.experiment.counts import (
    COINCIDENCE_WINDOW_S,
    DETECTORS,
    PAIRS,
    CountRecord,
    DetectorConfig,
    classify,
    expected_rates,
    records_from_frame,
    records_to_frame,
    simulate_counts,
)
from lossyhom.experiment.figures import FIGURES, FigureBundle, FigureConfig, FigureManifest, reproduce_figure
from lossyhom.experiment.fitting import FitHint, FitResult, fit_scan, scan_model
from lossyhom.experiment.source import PRESETS, SourceSetting, preset
from lossyhom.experiment.study import estimator_study, planted_records
from lossyhom.experiment.sweep import g2_sweep

__all__ = [
    "COINCIDENCE_WINDOW_S",
    "DETECTORS",
    "FIGURES",
    "PAIRS",
    "PRESETS",
    "CountRecord",
    "DetectorConfig",
    "FigureBundle",
    "FigureConfig",
    "FigureManifest",
    "FitHint",
    "FitResult",
    "SourceSetting",
    "classify",
    "estimator_study",
    "expected_rates",
    "fit_scan",
    "g2_sweep",
    "preset",
    "records_from_frame",
    "records_to_frame",
    "reproduce_figure",
    "planted_records",
    "scan_model",
    "simulate_counts",
]
