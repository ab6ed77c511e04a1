from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from lossyhom.core.beam_splitter import BeamSplitter, phase_bound


class Branch(str, Enum):
    HEATING = "heating"
    COOLING = "cooling"

    @classmethod
    def parse(cls, value: "str | Branch") -> "Branch":
        if isinstance(value, Branch):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError as exc:
            raise ValueError(f"branch must be 'heating' or 'cooling', got {value!r}.") from exc


def _logistic(x: float) -> float:
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


def saturating_logistic(x: float, saturation: float) -> float:
    """Logistic rescaled to be exactly 0 at -saturation and exactly 1 at +saturation."""
    if x <= -saturation:
        return 0.0
    if x >= saturation:
        return 1.0
    low, high = _logistic(-saturation), _logistic(saturation)
    return (_logistic(x) - low) / (high - low)


@dataclass(frozen=True)
class HysteresisModel:
    """Phenomenological VO2 transition: absorption follows a logistic in temperature per branch."""

    theta_c_heat: float = 68.0
    theta_c_cool: float = 62.0
    width: float = 3.0
    a_ins: float = 0.30
    a_met: float = 0.52
    balance_eta: float = 0.5
    saturation: float = 6.0

    def __post_init__(self) -> None:
        for name in ("theta_c_heat", "theta_c_cool", "width", "a_ins", "a_met", "balance_eta", "saturation"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite.")
        if self.width <= 0.0:
            raise ValueError(f"width must be > 0, got {self.width}.")
        if self.saturation <= 0.0:
            raise ValueError(f"saturation must be > 0, got {self.saturation}.")
        if not 0.0 <= self.a_ins < self.a_met <= 1.0:
            raise ValueError(f"Need 0 <= a_ins < a_met <= 1, got a_ins={self.a_ins}, a_met={self.a_met}.")
        if not 0.0 < self.balance_eta < 1.0:
            raise ValueError(f"balance_eta must lie in (0, 1), got {self.balance_eta}.")
        if self.theta_c_cool > self.theta_c_heat:
            raise ValueError("theta_c_cool must not exceed theta_c_heat.")

    def critical_temperature(self, branch: Branch | str) -> float:
        return self.theta_c_heat if Branch.parse(branch) is Branch.HEATING else self.theta_c_cool

    def transition_fraction(self, theta: float, branch: Branch | str) -> float:
        """Metallic fraction in [0, 1]."""
        x = (theta - self.critical_temperature(branch)) / self.width
        return saturating_logistic(x, self.saturation)


def tra_at(model: HysteresisModel, theta: float, branch: Branch | str) -> tuple[float, float, float]:
    """(T, R, A) intensities at temperature theta on the given branch."""
    fraction = model.transition_fraction(theta, branch)
    absorbance = model.a_ins + (model.a_met - model.a_ins) * fraction
    transmittance = model.balance_eta * (1.0 - absorbance)
    reflectance = 1.0 - absorbance - transmittance
    return transmittance, reflectance, absorbance


def clamp_exchange_phase(target: float, transmittance: float, reflectance: float) -> float:
    """Largest phase in [pi/2, target] allowed by passivity; pi once the bound reaches 1."""
    bound = phase_bound(math.sqrt(transmittance), math.sqrt(reflectance))
    if bound >= 1.0:
        return math.pi
    return min(target, math.pi - math.acos(bound))


def exchange_phase_at(model: HysteresisModel, theta: float, branch: Branch | str) -> float:
    transmittance, reflectance, _ = tra_at(model, theta, branch)
    target = 0.5 * math.pi * (1.0 + model.transition_fraction(theta, branch))
    return clamp_exchange_phase(target, transmittance, reflectance)


def splitter_at(model: HysteresisModel, theta: float, branch: Branch | str) -> BeamSplitter:
    transmittance, reflectance, _ = tra_at(model, theta, branch)
    return BeamSplitter.from_intensities(transmittance, reflectance, exchange_phase_at(model, theta, branch))
