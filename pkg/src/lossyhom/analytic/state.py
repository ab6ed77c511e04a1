from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from lossyhom.core.beam_splitter import wrap_phase

TWO_PI = 2.0 * math.pi


def thz_to_rad_per_ps(frequency_thz: float) -> float:
    """Ordinary frequency in THz to angular frequency in rad/ps."""
    return TWO_PI * frequency_thz


@dataclass(frozen=True)
class BiphotonState:
    """Frequency-bin entangled pair (|w1 w2> + exp(i phi_omega)|w2 w1>)/sqrt(2).

    delta and sigma are angular frequencies in rad/ps; the photon in port a is the delayed one.
    """

    delta: float
    phi_omega: float
    sigma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta) and self.delta >= 0.0):
            raise ValueError(f"delta must be finite and >= 0, got {self.delta}.")
        if not (math.isfinite(self.sigma) and self.sigma > 0.0):
            raise ValueError(f"sigma must be finite and > 0, got {self.sigma}.")
        object.__setattr__(self, "phi_omega", wrap_phase(self.phi_omega))

    @classmethod
    def from_thz(cls, delta_thz: float, phi_omega: float, sigma_thz: float) -> "BiphotonState":
        return cls(thz_to_rad_per_ps(delta_thz), phi_omega, thz_to_rad_per_ps(sigma_thz))

    def envelope(self, tau):
        return np.exp(-(self.sigma**2) * np.square(tau))

    def exchange_phase(self, tau):
        return self.delta * tau + self.phi_omega
