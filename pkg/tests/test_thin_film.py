import cmath
import math

import numpy as np
import pytest

from lossyhom.core import BeamSplitter, allowed_phase_arc, check_physical, clamp_to_arc
from lossyhom.material import (
    Branch,
    FilmStack,
    HysteresisModel,
    Layer,
    LayerStack,
    airy_single_layer,
    effective_index,
    film_tra,
    splitter_from_stack,
    tmm_stack,
)


def test_empty_stack_is_transparent():
    t, r, a = tmm_stack(LayerStack((), n_ambient=1.0, n_substrate=1.0))
    assert t == pytest.approx(1.0)
    assert r == pytest.approx(0.0)
    assert a == pytest.approx(0.0, abs=1e-15)


def test_bare_interface_gives_fresnel_coefficients():
    t, r, a = tmm_stack(LayerStack((), n_ambient=1.0, n_substrate=1.5))
    assert r == pytest.approx(-0.2)
    assert t == pytest.approx(0.8)
    assert a == pytest.approx(0.0, abs=1e-15)


def test_quarter_wave_layer():
    layer = Layer(2.0, 810.0 / 8.0)
    t, r, _ = tmm_stack(LayerStack((layer,), n_ambient=1.0, n_substrate=1.0, wavelength=810.0))
    assert r == pytest.approx(-0.6)
    assert t == pytest.approx(0.8j)


@pytest.mark.parametrize(
    "n_layer,d",
    [(1.8, 75.0), (2.4, 131.0), (3.1, 12.5), (2.9 + 0.45j, 75.0), (2.0 + 0.9j, 40.0)],
)
def test_single_layer_matches_airy_summation(n_layer, d):
    stack = LayerStack((Layer(n_layer, d),), n_ambient=1.0, n_substrate=1.76, wavelength=810.0)
    t, r, _ = tmm_stack(stack)
    t_airy, r_airy = airy_single_layer(n_layer, d, 1.0, 1.76, 810.0)
    assert abs(t) == pytest.approx(abs(t_airy), abs=1e-10)
    assert abs(r) == pytest.approx(abs(r_airy), abs=1e-10)
    assert abs(t - t_airy) < 1e-10
    assert abs(r - r_airy) < 1e-10


def test_lossless_stacks_conserve_energy():
    rng = np.random.default_rng(4)
    for _ in range(200):
        layers = tuple(Layer(float(rng.uniform(1.3, 3.5)), float(rng.uniform(5.0, 300.0))) for _ in range(rng.integers(1, 6)))
        _, _, a = tmm_stack(LayerStack(layers, n_ambient=1.0, n_substrate=float(rng.uniform(1.0, 2.0))))
        assert a == pytest.approx(0.0, abs=1e-10)


def test_absorbing_stacks_absorb_a_positive_fraction():
    rng = np.random.default_rng(5)
    for _ in range(200):
        layers = tuple(
            Layer(complex(rng.uniform(1.3, 3.5), rng.uniform(0.01, 1.0)), float(rng.uniform(5.0, 300.0)))
            for _ in range(rng.integers(1, 6))
        )
        t, r, a = tmm_stack(LayerStack(layers))
        assert 0.0 < a < 1.0
        assert 1.76 * abs(t) ** 2 + abs(r) ** 2 + a == pytest.approx(1.0, abs=1e-10)


def test_random_symmetric_absorbing_stacks_give_physical_splitters():
    rng = np.random.default_rng(6)
    for _ in range(300):
        half = [
            Layer(complex(rng.uniform(1.3, 3.5), rng.uniform(0.0, 1.0)), float(rng.uniform(5.0, 200.0)))
            for _ in range(rng.integers(1, 4))
        ]
        layers = tuple(half + half[-2::-1])
        ambient = float(rng.uniform(1.0, 1.8))
        bs = splitter_from_stack(LayerStack(layers, n_ambient=ambient, n_substrate=ambient))
        assert check_physical(bs).physical


def test_splitter_from_stack_rejects_asymmetric_stacks():
    with pytest.raises(ValueError):
        splitter_from_stack(LayerStack((Layer(2.0, 50.0),), n_ambient=1.0, n_substrate=1.76))
    with pytest.raises(ValueError):
        splitter_from_stack(LayerStack((Layer(2.0, 50.0), Layer(3.0, 20.0)), n_ambient=1.0, n_substrate=1.0))


def test_layer_validation():
    with pytest.raises(ValueError):
        Layer(2.0, 0.0)
    with pytest.raises(ValueError):
        Layer(2.0 - 0.1j, 10.0)
    with pytest.raises(ValueError):
        LayerStack((), wavelength=-1.0)


def _bisect(func, low, high):
    for _ in range(200):
        mid = 0.5 * (low + high)
        if func(low) * func(mid) <= 0:
            high = mid
        else:
            low = mid
    return 0.5 * (low + high)


def test_bruggeman_mixture_endpoints_and_real_root():
    assert effective_index(1.5, 2.0 + 0.5j, 0.0) == 1.5
    assert effective_index(1.5, 2.0 + 0.5j, 1.0) == 2.0 + 0.5j

    def balance(eps):
        return 0.5 * (2 - eps) / (2 + 2 * eps) + 0.5 * (8 - eps) / (8 + 2 * eps)

    expected = _bisect(balance, 2.0, 8.0)
    eps = effective_index(math.sqrt(2.0), math.sqrt(8.0), 0.5) ** 2
    assert eps.real == pytest.approx(expected, abs=1e-9)
    assert eps.imag == pytest.approx(0.0, abs=1e-12)


def test_bruggeman_root_is_absorbing_and_continuous():
    n_ins, n_met = 2.9 + 0.45j, 2.0 + 0.9j
    previous = effective_index(n_ins, n_met, 0.0)
    for fill in np.linspace(0.0, 1.0, 401)[1:]:
        current = effective_index(n_ins, n_met, float(fill))
        assert current.imag >= 0.0
        assert abs(current - previous) < 0.05
        previous = current
    assert abs(previous - n_met) < 1e-12


def test_effective_index_rejects_bad_fill():
    with pytest.raises(ValueError):
        effective_index(1.5, 2.0, 1.5)


def test_film_response_across_the_transition():
    film = FilmStack()
    model = HysteresisModel()
    for theta in (25.0, 68.0, 95.0):
        t, r, a, phi = film_tra(film, model, theta, Branch.HEATING)
        assert t + r + a == pytest.approx(1.0, abs=1e-10)
        assert 0.0 < a < 1.0
        assert -math.pi < phi <= math.pi
    cold = film_tra(film, model, 25.0, Branch.HEATING)
    hot = film_tra(film, model, 95.0, Branch.HEATING)
    assert cold != pytest.approx(hot)
    assert cmath.isclose(effective_index(film.n_ins, film.n_met, 0.0), film.n_ins)


def _film_row_is_physical(row):
    transmittance, reflectance, _, phi = row
    return check_physical(BeamSplitter.from_intensities(transmittance, reflectance, phi)).physical


def test_film_rows_on_a_substrate_respect_passivity():
    model = HysteresisModel()
    rng = np.random.default_rng(2024)
    films = [FilmStack(thickness_nm=297.0, n_ins=2.756 + 0.0009j, n_met=2.56 + 0.36j)]
    for _ in range(200):
        films.append(
            FilmStack(
                thickness_nm=float(rng.uniform(10.0, 400.0)),
                n_ins=complex(rng.uniform(1.5, 3.5), rng.uniform(0.0, 1.0)),
                n_met=complex(rng.uniform(1.5, 3.5), rng.uniform(0.0, 1.5)),
                n_substrate=float(rng.uniform(1.0, 2.5)),
            )
        )
    for film in films:
        for theta in (25.0, 66.0, 68.0, 70.0, 95.0):
            for branch in (Branch.HEATING, Branch.COOLING):
                assert _film_row_is_physical(film_tra(film, model, theta, branch))


def test_index_matched_film_reports_its_own_exchange_phase():
    film = FilmStack(n_substrate=1.0)
    model = HysteresisModel()
    for theta in (25.0, 68.0, 95.0):
        fraction = model.transition_fraction(theta, Branch.HEATING)
        bs = splitter_from_stack(film.at_fill(fraction))
        transmittance, reflectance, _, phi = film_tra(film, model, theta, Branch.HEATING)
        assert phi == pytest.approx(bs.phi_rt, abs=1e-9)
        assert transmittance == pytest.approx(bs.transmittance, abs=1e-12)
        assert reflectance == pytest.approx(bs.reflectance, abs=1e-12)


def test_clamp_to_arc_keeps_sign_and_allowed_phases():
    t_mag, r_mag = math.sqrt(0.4), math.sqrt(0.5)
    low, high = allowed_phase_arc(t_mag, r_mag)
    assert clamp_to_arc(0.0, t_mag, r_mag) == pytest.approx(low)
    assert clamp_to_arc(-0.1, t_mag, r_mag) == pytest.approx(-low)
    assert clamp_to_arc(-3.1, t_mag, r_mag) == pytest.approx(-high)
    assert clamp_to_arc(math.pi / 2, t_mag, r_mag) == math.pi / 2
    assert clamp_to_arc(0.2, 1.0, 0.0) == 0.2
