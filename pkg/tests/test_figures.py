import json

import numpy as np
import pytest

from lossyhom.experiment import FigureConfig, FigureManifest, reproduce_figure
from lossyhom.material import Branch, HysteresisModel, tra_at


def _value_at_zero(frame, pair):
    rows = frame[frame["pair"] == pair]
    index = int(np.argmin(np.abs(rows["tau_ps"].to_numpy())))
    return rows["expected"].iloc[index], rows["expected"].iloc[0]


def test_fig2_states_are_normalised_per_setting():
    bundle = reproduce_figure("fig2_states")
    assert set(bundle.datasets) == {
        "fig2_symmetric_degenerate",
        "fig2_antisymmetric_nondegenerate",
        "fig2_symmetric_nondegenerate",
    }
    for frame in bundle.datasets.values():
        assert list(frame["theta_c"]) == [40.0, 65.5, 80.0]
        totals = frame["p11"] + frame["p20"] + frame["p02"] + frame["p_abs"]
        assert np.allclose(totals, 1.0, atol=1e-9)


def test_fig3_cross_channel_flips_from_dip_to_peak():
    bundle = reproduce_figure("fig3_scans")
    assert len(bundle.datasets) == 9
    at_zero, far = _value_at_zero(bundle.datasets["fig3_symmetric_degenerate_40"], "AC")
    assert at_zero < far
    at_zero, far = _value_at_zero(bundle.datasets["fig3_symmetric_degenerate_80"], "AC")
    assert at_zero > far


def test_fig4_cooling_to_40_restores_the_conventional_pattern():
    heated = reproduce_figure("fig3_scans").datasets["fig3_symmetric_degenerate_40"]
    cooled = reproduce_figure("fig4_scans").datasets["fig4_symmetric_degenerate_40"]
    assert np.allclose(heated["expected"], cooled["expected"], atol=1e-12)
    assert list(heated["counts"]) == list(cooled["counts"])


def test_heating_and_cooling_states_agree_after_branch_shift():
    model = HysteresisModel()
    for theta in (40.0, 65.5, 80.0):
        assert tra_at(model, theta, Branch.HEATING) == pytest.approx(tra_at(model, theta - 6.0, Branch.COOLING), abs=1e-12)


def test_fig5_sweep_is_a_single_monotone_table():
    bundle = reproduce_figure("fig5_sweep")
    assert list(bundle.datasets) == ["fig5_sweep"]
    frame = bundle.datasets["fig5_sweep"]
    assert frame["theta_c"].iloc[0] == 25.0
    assert frame["theta_c"].iloc[-1] == 95.0
    assert len(frame) == 141
    assert np.all(np.diff(frame["g2"].to_numpy()) >= -1e-12)


def test_manifest_lists_files_and_settings():
    bundle = reproduce_figure("fig4_scans", FigureConfig(seed=3, n_points=41))
    manifest = bundle.manifest
    assert manifest.branch == "cooling"
    assert manifest.seed == 3
    assert manifest.files == [f"{name}.csv" for name in bundle.datasets]
    assert len(manifest.settings) == 3
    assert FigureManifest.from_json(manifest.to_json()) == manifest
    assert json.loads(manifest.to_json())["fig_id"] == "fig4_scans"


def test_unknown_figure_is_rejected():
    with pytest.raises(ValueError):
        reproduce_figure("fig9")
