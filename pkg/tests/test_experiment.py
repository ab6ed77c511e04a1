import math

import numpy as np
import pytest

from lossyhom.analytic import BiphotonState, g2_zero, p11, p_bunch
from lossyhom.core import BeamSplitter, random_physical_bs
from lossyhom.errors import DegenerateData, NotPhysical, UnknownPair
from lossyhom.experiment import (
    PAIRS,
    PRESETS,
    CountRecord,
    DetectorConfig,
    FitHint,
    classify,
    estimator_study,
    expected_rates,
    fit_scan,
    g2_sweep,
    preset,
    scan_model,
    simulate_counts,
)
from lossyhom.material import Branch, HysteresisModel, splitter_at

LOSSLESS = BeamSplitter(1 / math.sqrt(2), 1 / math.sqrt(2), math.pi / 2)
SYMMETRIC = preset("symmetric_degenerate")
TAUS = np.linspace(-2.0, 2.0, 201)


def _noiseless(bs, setting, pair):
    records = simulate_counts(bs, setting.state(), DetectorConfig(), TAUS, seed=0)
    return [r for r in records if r.pair == pair]


def test_pair_classification():
    assert classify("AB") == "same_side"
    assert classify("CD") == "same_side"
    assert classify("BD") == "opposite_side"
    with pytest.raises(UnknownPair):
        classify("AE")


def test_presets_carry_source_settings():
    assert set(PRESETS) == {"symmetric_degenerate", "antisymmetric_nondegenerate", "symmetric_nondegenerate"}
    anti = preset("antisymmetric_nondegenerate")
    assert anti.delta == pytest.approx(2 * math.pi * 2.95)
    assert anti.phi_omega == pytest.approx(math.pi)
    assert anti.crystal_temp == 45.0
    with pytest.raises(ValueError):
        preset("unknown")


def test_expected_rates_for_ideal_bunching():
    det = DetectorConfig(pair_rate=1e4)
    rates = expected_rates(LOSSLESS, SYMMETRIC.state(), 0.0, det)
    assert rates["AB"] == pytest.approx(2500.0)
    assert rates["CD"] == pytest.approx(2500.0)
    assert rates["AC"] == pytest.approx(0.0, abs=1e-9)
    far = expected_rates(LOSSLESS, SYMMETRIC.state(), 10.0, det)
    assert far["AC"] == pytest.approx(1250.0)


def test_zero_pair_rate_leaves_the_accidental_floor():
    dark = {"A": 100.0, "B": 200.0, "C": 300.0, "D": 400.0}
    det = DetectorConfig(pair_rate=0.0, dark_rate=dark)
    rates = expected_rates(LOSSLESS, SYMMETRIC.state(), 0.0, det)
    for pair in PAIRS:
        assert rates[pair] == pytest.approx(dark[pair[0]] * dark[pair[1]] * 1e-9)


def test_routing_conserves_detected_pairs():
    det = DetectorConfig(pair_rate=1e4)
    for seed in range(100):
        bs = random_physical_bs(seed)
        state = BiphotonState(18.0, 0.3 * seed, 3.0)
        rates = expected_rates(bs, state, 0.05, det)
        p20, p02 = p_bunch(bs, state, 0.05)
        assert sum(rates.values()) == pytest.approx(1e4 * (p11(bs, state, 0.05) + (p20 + p02) / 2), abs=1e-8)


def test_detector_validation():
    with pytest.raises(ValueError):
        DetectorConfig(fiber_split=1.5)
    with pytest.raises(ValueError):
        DetectorConfig(t_int=0.0)
    with pytest.raises(ValueError):
        DetectorConfig(eta={"A": 1.0})


def test_simulated_counts_are_seeded_and_carry_the_mean():
    det = DetectorConfig(pair_rate=1e4, t_int=2.0)
    first = simulate_counts(LOSSLESS, SYMMETRIC.state(), det, TAUS, seed=7)
    second = simulate_counts(LOSSLESS, SYMMETRIC.state(), det, TAUS, seed=7)
    other = simulate_counts(LOSSLESS, SYMMETRIC.state(), det, TAUS, seed=8)
    assert first == second
    assert [r.counts for r in first] != [r.counts for r in other]
    rates = expected_rates(LOSSLESS, SYMMETRIC.state(), float(TAUS[3]), det)
    assert first[3 * len(PAIRS)].expected == rates[PAIRS[0]] * 2.0


def test_counts_concentrate_around_the_mean():
    det = DetectorConfig(pair_rate=1e5)
    records = simulate_counts(LOSSLESS, preset("antisymmetric_nondegenerate").state(), det, TAUS, seed=1)
    inside = [abs(r.counts - r.expected) <= 3 * math.sqrt(r.expected) for r in records if r.expected > 0]
    assert sum(inside) / len(inside) >= 0.99


def test_counts_require_physical_splitter():
    with pytest.raises(NotPhysical):
        simulate_counts(BeamSplitter(0.9, 0.9, 0.0), SYMMETRIC.state(), DetectorConfig(), TAUS)


def test_count_record_rejects_unknown_pairs():
    with pytest.raises(UnknownPair):
        CountRecord("XY", 0.0, 1, 1.0)


def test_fit_recovers_a_noiseless_dip():
    records = _noiseless(LOSSLESS, SYMMETRIC, "AC")
    fit = fit_scan(records, FitHint(delta=0.0, sigma=SYMMETRIC.sigma), observable="expected")
    assert fit.visibility == pytest.approx(1.0, abs=1e-6)
    assert fit.tau0_hat == pytest.approx(0.0, abs=1e-6)
    assert fit.sigma_hat == pytest.approx(SYMMETRIC.sigma, rel=1e-6)
    assert fit.delta_hat == 0.0


def test_fit_recovers_its_own_fringed_model():
    truth = dict(baseline=1000.0, c=0.6, s=0.3, delta=18.54, sigma=math.pi, tau0=0.05)
    values = scan_model(TAUS, *truth.values())
    records = [CountRecord("AD", float(t), int(round(v)), float(v)) for t, v in zip(TAUS, values)]
    fit = fit_scan(records, FitHint(delta=18.54, sigma=math.pi), observable="expected")
    assert fit.baseline == pytest.approx(truth["baseline"], rel=1e-6)
    assert fit.visibility == pytest.approx(truth["c"], rel=1e-6)
    assert fit.delta_hat == pytest.approx(truth["delta"], rel=1e-6)
    assert fit.sigma_hat == pytest.approx(truth["sigma"], rel=1e-6)
    assert fit.tau0_hat == pytest.approx(truth["tau0"], rel=1e-6)
    assert fit.phase_hat == pytest.approx(math.atan2(0.3, 0.6), rel=1e-6)


def test_fit_rejects_degenerate_data():
    flat = [CountRecord("AB", float(t), 0, 0.0) for t in TAUS]
    with pytest.raises(DegenerateData):
        fit_scan(flat, FitHint(0.0, math.pi))
    with pytest.raises(DegenerateData):
        fit_scan(_noiseless(LOSSLESS, SYMMETRIC, "AC")[:10], FitHint(0.0, math.pi))
    with pytest.raises(ValueError):
        fit_scan(_noiseless(LOSSLESS, SYMMETRIC, "AC") + _noiseless(LOSSLESS, SYMMETRIC, "AB"), FitHint(0.0, math.pi))


def test_estimator_recovers_planted_visibility_and_splitting():
    study = estimator_study(range(100))
    assert study["visibility_error"].mean() <= 0.02
    assert study["delta_rel_error"].mean() <= 0.01


def test_inversion_between_40_and_80_degrees():
    model = HysteresisModel()
    hint = FitHint(delta=0.0, sigma=SYMMETRIC.sigma)
    fits = {}
    for theta in (40.0, 80.0):
        bs = splitter_at(model, theta, Branch.HEATING)
        fits[theta] = {
            pair: fit_scan(_noiseless(bs, SYMMETRIC, pair), hint, observable="expected") for pair in ("AC", "AB")
        }
    assert fits[40.0]["AC"].visibility > 0.0
    assert fits[80.0]["AC"].visibility < 0.0
    assert abs(fits[40.0]["AB"].visibility - fits[80.0]["AB"].visibility) <= 1e-6


def test_g2_heating_sweep_rises_through_one_exactly_once():
    model = HysteresisModel()
    thetas = np.arange(25.0, 95.25, 0.5)
    sweep = g2_sweep(model, SYMMETRIC, thetas, Branch.HEATING)
    g2 = sweep["g2"].to_numpy()
    assert np.all(np.diff(g2) >= -1e-12)
    assert np.count_nonzero(np.diff(np.sign(g2 - 1.0))) == 1
    for theta, value in ((25.0, g2[0]), (95.0, g2[-1])):
        assert value == pytest.approx(g2_zero(splitter_at(model, theta, Branch.HEATING), SYMMETRIC.state()), abs=1e-9)


def test_g2_cooling_sweep_retraces_heating_after_branch_shift():
    model = HysteresisModel()
    thetas = np.arange(40.0, 95.25, 0.5)
    heating = g2_sweep(model, SYMMETRIC, thetas, Branch.HEATING)["g2"].to_numpy()
    cooling = g2_sweep(model, SYMMETRIC, thetas - 6.0, Branch.COOLING)["g2"].to_numpy()
    assert np.allclose(heating, cooling, atol=1e-12)


def test_g2_antisymmetric_sweep_is_mirrored():
    model = HysteresisModel()
    sweep = g2_sweep(model, preset("antisymmetric_nondegenerate"), [25.0, 95.0])
    assert sweep["g2"].iloc[0] > 1.0
    assert sweep["g2"].iloc[-1] <= 1.0


def test_g2_sweep_single_point_and_empty_list():
    model = HysteresisModel()
    sweep = g2_sweep(model, SYMMETRIC, [50.0])
    assert list(sweep.columns) == ["theta_c", "g2"]
    assert sweep["g2"].iloc[0] == pytest.approx(g2_zero(splitter_at(model, 50.0, "heating"), SYMMETRIC.state()))
    with pytest.raises(ValueError):
        g2_sweep(model, SYMMETRIC, [])
