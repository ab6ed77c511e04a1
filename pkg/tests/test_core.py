import math

import numpy as np
import pytest

from lossyhom.core import (
    BeamSplitter,
    allowed_phase_arc,
    check_physical,
    dilation_residual,
    phase_bound,
    random_physical_bs,
    require_physical,
    singular_values,
    unitary_dilation,
    wrap_phase,
)
from lossyhom.errors import NotPhysical


def test_wrap_phase_maps_into_half_open_interval():
    assert wrap_phase(-math.pi) == pytest.approx(math.pi)
    assert wrap_phase(3 * math.pi) == pytest.approx(math.pi)
    assert wrap_phase(2.5 * math.pi) == pytest.approx(0.5 * math.pi)
    assert BeamSplitter(0.5, 0.5, -math.pi).phi_rt == pytest.approx(math.pi)


def test_beam_splitter_rejects_out_of_range_amplitudes():
    with pytest.raises(ValueError):
        BeamSplitter(1.2, 0.1)
    with pytest.raises(ValueError):
        BeamSplitter(0.5, float("nan"))


def test_lossless_and_cpa_splitters_sit_on_the_bound():
    lossless = BeamSplitter(1 / math.sqrt(2), 1 / math.sqrt(2), math.pi / 2)
    assert check_physical(lossless).physical
    assert lossless.absorbance == pytest.approx(0.0, abs=1e-15)

    cpa = BeamSplitter(0.5, 0.5, math.pi)
    report = check_physical(cpa)
    assert report.physical
    assert report.bound == pytest.approx(1.0)


def test_require_physical_reports_bound_and_cosine():
    bs = BeamSplitter(0.7, 0.7, 0.0)
    assert not check_physical(bs).physical
    with pytest.raises(NotPhysical) as excinfo:
        require_physical(bs)
    assert excinfo.value.bound == pytest.approx(0.02 / 0.98)
    assert "|cos phi_rt|=1" in str(excinfo.value)


def test_phase_bound_without_splitting_is_unconstrained():
    assert math.isinf(phase_bound(1.0, 0.0))
    assert check_physical(BeamSplitter(1.0, 0.0, 0.3)).physical


def test_passivity_predicate_matches_singular_value_test():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        t_mag, r_mag = rng.random(2)
        bs = BeamSplitter(float(t_mag), float(r_mag), float(rng.uniform(-math.pi, math.pi)))
        contractive = singular_values(bs).max() <= 1.0 + 1e-10
        assert check_physical(bs).physical == contractive


def test_allowed_arc_edges_are_physical():
    low, high = allowed_phase_arc(0.6, 0.5)
    for phi in (low, high, -low, -high):
        assert check_physical(BeamSplitter(0.6, 0.5, phi)).physical
    assert not check_physical(BeamSplitter(0.6, 0.5, low - 1e-3)).physical


def test_dilation_is_unitary_and_embeds_the_splitter():
    for seed in range(200):
        bs = random_physical_bs(seed)
        u = unitary_dilation(bs)
        assert dilation_residual(u) < 1e-12
        assert np.allclose(u[:2, :2], [[bs.t, bs.r], [bs.r, bs.t]], atol=1e-15)


def test_dilation_refuses_active_splitters():
    with pytest.raises(NotPhysical):
        unitary_dilation(BeamSplitter(0.9, 0.9, 0.0))


def test_random_physical_bs_is_deterministic_and_physical():
    assert random_physical_bs(3) == random_physical_bs(3)
    assert all(check_physical(random_physical_bs(seed)).physical for seed in range(1000))
