from __future__ import annotations

import math
from dataclasses import dataclass

from lossyhom.analytic.state import BiphotonState, thz_to_rad_per_ps

DEFAULT_SIGMA_THZ = 0.5


@dataclass(frozen=True)
class SourceSetting:
    """A named pump/crystal configuration of the frequency-bin entangled source."""

    name: str
    delta: float
    phi_omega: float
    sigma: float
    crystal_temp: float

    def __post_init__(self) -> None:
        self.state()

    @classmethod
    def from_thz(
        cls, name: str, delta_thz: float, phi_omega: float, crystal_temp: float, sigma_thz: float = DEFAULT_SIGMA_THZ
    ) -> "SourceSetting":
        return cls(name, thz_to_rad_per_ps(delta_thz), phi_omega, thz_to_rad_per_ps(sigma_thz), crystal_temp)

    def state(self) -> BiphotonState:
        return BiphotonState(self.delta, self.phi_omega, self.sigma)

    def as_dict(self) -> dict[str, float | str]:
        return {
            "name": self.name,
            "delta": self.delta,
            "phi_omega": self.phi_omega,
            "sigma": self.sigma,
            "crystal_temp": self.crystal_temp,
        }


PRESETS: dict[str, SourceSetting] = {
    setting.name: setting
    for setting in (
        SourceSetting.from_thz("symmetric_degenerate", 0.0, 0.0, 23.5),
        SourceSetting.from_thz("antisymmetric_nondegenerate", 2.95, math.pi, 45.0),
        SourceSetting.from_thz("symmetric_nondegenerate", 5.85, 0.0, 60.0),
    )
}


def preset(name: str) -> SourceSetting:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"Unknown source preset {name!r}; choose from {', '.join(PRESETS)}.") from None
