"""Normal-incidence thin-film optics: characteristic matrices and Bruggeman mixing.

Complex indices are written n + i*kappa with kappa >= 0 for absorbing media, and
plane waves propagate as exp(i (k z - w t)).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from lossyhom.core.beam_splitter import BeamSplitter, clamp_to_arc, require_physical, wrap_phase
from lossyhom.material.hysteresis import Branch, HysteresisModel

SAPPHIRE_INDEX = 1.76
PROBE_WAVELENGTH_NM = 810.0


@dataclass(frozen=True)
class Layer:
    n: complex
    d: float  # nm

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", complex(self.n))
        if not (math.isfinite(self.d) and self.d > 0.0):
            raise ValueError(f"Layer thickness must be > 0 nm, got {self.d}.")
        if self.n.imag < 0.0:
            raise ValueError(f"Layer index must have Im(n) >= 0, got {self.n}.")


@dataclass(frozen=True)
class LayerStack:
    layers: tuple[Layer, ...] = ()
    n_ambient: float = 1.0
    n_substrate: float = SAPPHIRE_INDEX
    wavelength: float = PROBE_WAVELENGTH_NM

    def __post_init__(self) -> None:
        object.__setattr__(self, "layers", tuple(self.layers))
        for name in ("n_ambient", "n_substrate", "wavelength"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be finite and > 0, got {value}.")

    def is_mirror_symmetric(self) -> bool:
        return self.n_ambient == self.n_substrate and self.layers == self.layers[::-1]


def characteristic_matrix(layer: Layer, wavelength: float) -> np.ndarray:
    delta = 2.0 * math.pi * layer.n * layer.d / wavelength
    cos_d, sin_d = cmath.cos(delta), cmath.sin(delta)
    return np.array([[cos_d, -1j * sin_d / layer.n], [-1j * layer.n * sin_d, cos_d]], dtype=complex)


def tmm_stack(stack: LayerStack) -> tuple[complex, complex, float]:
    """(t, r, A) amplitude coefficients of the stack seen from the ambient side."""
    total = np.eye(2, dtype=complex)
    for layer in stack.layers:
        total = total @ characteristic_matrix(layer, stack.wavelength)
    b, c = total @ np.array([1.0, stack.n_substrate], dtype=complex)
    denominator = stack.n_ambient * b + c
    r = complex((stack.n_ambient * b - c) / denominator)
    t = complex(2.0 * stack.n_ambient / denominator)
    absorbance = 1.0 - (stack.n_substrate / stack.n_ambient) * abs(t) ** 2 - abs(r) ** 2
    return t, r, absorbance


def airy_single_layer(
    n_layer: complex, d: float, n_ambient: float, n_substrate: float, wavelength: float
) -> tuple[complex, complex]:
    """(t, r) of one film from the summed multiple reflections between its two interfaces."""
    r01 = (n_ambient - n_layer) / (n_ambient + n_layer)
    r12 = (n_layer - n_substrate) / (n_layer + n_substrate)
    t01 = 2.0 * n_ambient / (n_ambient + n_layer)
    t12 = 2.0 * n_layer / (n_layer + n_substrate)
    phase = cmath.exp(2j * math.pi * n_layer * d / wavelength)
    round_trip = 1.0 + r01 * r12 * phase**2
    return t01 * t12 * phase / round_trip, (r01 + r12 * phase**2) / round_trip


def _physical_root(candidates: tuple[complex, complex], tol: float) -> complex:
    """Root in the upper half-plane; between two (near-)real roots, the one with positive real part."""
    absorbing = [z for z in candidates if z.imag > tol]
    if len(absorbing) == 1:
        return absorbing[0]
    return max(candidates, key=lambda z: z.real)


def effective_index(n_ins: complex, n_met: complex, fill: float) -> complex:
    """Bruggeman index of a two-phase mixture; ``fill`` is the metallic volume fraction."""
    if not 0.0 <= fill <= 1.0:
        raise ValueError(f"fill must lie in [0, 1], got {fill}.")
    if fill == 0.0:
        return complex(n_ins)
    if fill == 1.0:
        return complex(n_met)
    eps_ins, eps_met = complex(n_ins) ** 2, complex(n_met) ** 2
    # 2 eps^2 - b eps - eps_ins eps_met = 0
    b = (3.0 * fill - 1.0) * eps_met + (2.0 - 3.0 * fill) * eps_ins
    root = cmath.sqrt(b * b + 8.0 * eps_ins * eps_met)
    candidates = ((b + root) / 4.0, (b - root) / 4.0)
    return cmath.sqrt(_physical_root(candidates, tol=1e-12 * max(abs(eps_ins), abs(eps_met))))


def splitter_from_stack(stack: LayerStack) -> BeamSplitter:
    """Two-port splitter of a stack whose front and back responses coincide."""
    if not stack.is_mirror_symmetric():
        raise ValueError("splitter_from_stack needs an index-matched, palindromic stack.")
    t, r, _ = tmm_stack(stack)
    t_mag, r_mag = min(1.0, abs(t)), min(1.0, abs(r))
    phi_rt = wrap_phase(cmath.phase(r) - cmath.phase(t)) if t_mag and r_mag else math.pi / 2
    bs = BeamSplitter(t_mag, r_mag, phi_rt)
    require_physical(bs)
    return bs


@dataclass(frozen=True)
class FilmStack:
    """A single VO2 film whose index is mixed from its two phases across the transition."""

    thickness_nm: float = 75.0
    n_ins: complex = 2.9 + 0.45j
    n_met: complex = 2.0 + 0.9j
    n_ambient: float = 1.0
    n_substrate: float = SAPPHIRE_INDEX
    wavelength_nm: float = PROBE_WAVELENGTH_NM

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_ins", complex(self.n_ins))
        object.__setattr__(self, "n_met", complex(self.n_met))
        self.at_fill(0.0)
        self.at_fill(1.0)

    def at_fill(self, fill: float) -> LayerStack:
        layer = Layer(effective_index(self.n_ins, self.n_met, fill), self.thickness_nm)
        return LayerStack((layer,), self.n_ambient, self.n_substrate, self.wavelength_nm)


def film_tra(film: FilmStack, model: HysteresisModel, theta: float, branch: Branch | str) -> tuple[float, float, float, float]:
    """(T, R, A, phi_rt) of the film at temperature theta.

    T, R and A are those of the film on its substrate. phi_rt is arg r - arg t of the same film
    index-matched to the ambient (the symmetric two-port), moved onto the passivity arc of the
    reported T and R.
    """
    fraction = model.transition_fraction(theta, branch)
    stack = film.at_fill(fraction)
    t, r, absorbance = tmm_stack(stack)
    transmittance = (stack.n_substrate / stack.n_ambient) * abs(t) ** 2
    reflectance = abs(r) ** 2
    t_sym, r_sym, _ = tmm_stack(replace(film, n_substrate=film.n_ambient).at_fill(fraction))
    phi_rt = clamp_to_arc(cmath.phase(r_sym) - cmath.phase(t_sym), math.sqrt(transmittance), math.sqrt(reflectance))
    return transmittance, reflectance, absorbance, phi_rt
