from __future__ import annotations


class LossyHomError(ValueError):
    """Base class for every error raised by lossyhom."""


class NotPhysical(LossyHomError):
    def __init__(self, message: str, bound: float, cos_phi: float) -> None:
        super().__init__(f"{message} (bound={bound:.12g}, |cos phi_rt|={abs(cos_phi):.12g})")
        self.bound = bound
        self.cos_phi = cos_phi


class ZeroBaseline(LossyHomError):
    pass


class BaselineTooShort(LossyHomError):
    pass


class GridTooCoarse(LossyHomError):
    def __init__(self, change: float, n_points: int) -> None:
        super().__init__(f"Doubling the grid from {n_points} points changed a probability by {change:.3e}.")
        self.change = change
        self.n_points = n_points


class StateVanishes(LossyHomError):
    pass


class CalibrationError(LossyHomError):
    pass


class ParseError(CalibrationError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class NonMonotonic(CalibrationError):
    def __init__(self, index: int, theta: float) -> None:
        super().__init__(f"theta must be strictly increasing; row {index} has theta={theta:g}")
        self.index = index


class RowNotNormalized(CalibrationError):
    def __init__(self, line: int, total: float) -> None:
        super().__init__(f"line {line}: T+R+A={total:.4f} is outside 1 +/- 0.02")
        self.line = line
        self.total = total


class UnknownPair(LossyHomError):
    pass


class FitError(LossyHomError):
    pass


class DegenerateData(FitError):
    pass


class NoConvergence(FitError):
    pass


class ConfigError(LossyHomError):
    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"{key}: {message}")
        self.key = key


class DatasetError(LossyHomError):
    pass
