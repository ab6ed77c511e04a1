from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from lossyhom.errors import NotPhysical

PHYSICAL_TOL = 1e-12

# Returned by phase_bound when t_mag * r_mag == 0: no phase constraint applies.
UNCONSTRAINED = math.inf


def wrap_phase(phi: float) -> float:
    """Map an angle into (-pi, pi]."""
    wrapped = math.remainder(float(phi), 2.0 * math.pi)
    return math.pi if wrapped <= -math.pi else wrapped


@dataclass(frozen=True)
class BeamSplitter:
    """Symmetric two-port with transmission t = t_mag and reflection r = r_mag * exp(i phi_rt)."""

    t_mag: float
    r_mag: float
    phi_rt: float = math.pi / 2

    def __post_init__(self) -> None:
        for name in ("t_mag", "r_mag", "phi_rt"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite.")
        for name in ("t_mag", "r_mag"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}.")
        object.__setattr__(self, "phi_rt", wrap_phase(self.phi_rt))

    @property
    def t(self) -> complex:
        return complex(self.t_mag, 0.0)

    @property
    def r(self) -> complex:
        return self.r_mag * complex(math.cos(self.phi_rt), math.sin(self.phi_rt))

    @property
    def transmittance(self) -> float:
        return self.t_mag**2

    @property
    def reflectance(self) -> float:
        return self.r_mag**2

    @property
    def absorbance(self) -> float:
        return max(0.0, 1.0 - self.t_mag**2 - self.r_mag**2)

    @classmethod
    def from_intensities(cls, transmittance: float, reflectance: float, phi_rt: float) -> "BeamSplitter":
        return cls(math.sqrt(transmittance), math.sqrt(reflectance), phi_rt)


@dataclass(frozen=True)
class PhysicalityReport:
    physical: bool
    bound: float
    cos_phi: float
    excess_intensity: float


def phase_bound(t_mag: float, r_mag: float) -> float:
    """Right-hand side of the passivity inequality |cos phi_rt| <= bound (not clamped)."""
    product = t_mag * r_mag
    if product == 0.0:
        return UNCONSTRAINED
    return (1.0 - t_mag**2 - r_mag**2) / (2.0 * product)


def check_physical(bs: BeamSplitter, tol: float = PHYSICAL_TOL) -> PhysicalityReport:
    intensity = bs.t_mag**2 + bs.r_mag**2
    bound = phase_bound(bs.t_mag, bs.r_mag)
    cos_phi = math.cos(bs.phi_rt)
    physical = intensity <= 1.0 + tol and abs(cos_phi) <= min(bound, 1.0) + tol
    return PhysicalityReport(
        physical=physical,
        bound=bound,
        cos_phi=cos_phi,
        excess_intensity=max(0.0, intensity - 1.0),
    )


def require_physical(bs: BeamSplitter) -> PhysicalityReport:
    report = check_physical(bs)
    if not report.physical:
        raise NotPhysical("Beam splitter violates the passivity bound", report.bound, report.cos_phi)
    return report


def scattering_matrix(bs: BeamSplitter) -> np.ndarray:
    t, r = bs.t, bs.r
    return np.array([[t, r], [r, t]], dtype=complex)


def allowed_phase_arc(t_mag: float, r_mag: float) -> tuple[float, float]:
    """Range of |phi_rt| in [0, pi] that satisfies the passivity bound."""
    edge = math.acos(min(1.0, phase_bound(t_mag, r_mag)))
    return edge, math.pi - edge


def clamp_to_arc(phi: float, t_mag: float, r_mag: float) -> float:
    """Nearest phase to phi, keeping its sign, whose magnitude lies on the allowed arc."""
    low, high = allowed_phase_arc(t_mag, r_mag)
    wrapped = wrap_phase(phi)
    return math.copysign(min(max(abs(wrapped), low), high), wrapped)


def random_physical_bs(seed: int) -> BeamSplitter:
    """Uniform over the intensity simplex, then uniform over the allowed phase arc."""
    rng = np.random.default_rng(seed)
    transmittance, reflectance = rng.random(2)
    if transmittance + reflectance > 1.0:
        transmittance, reflectance = 1.0 - transmittance, 1.0 - reflectance
    t_mag, r_mag = math.sqrt(transmittance), math.sqrt(reflectance)
    low, high = allowed_phase_arc(t_mag, r_mag)
    phi = float(rng.uniform(low, high))
    if rng.random() < 0.5:
        phi = -phi
    return BeamSplitter(t_mag, r_mag, phi)
