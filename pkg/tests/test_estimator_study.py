import argparse

import pandas as pd
import pytest

from estimator_study import run_study


def test_run_study_writes_one_row_per_seed(tmp_path):
    out = tmp_path / "study.csv"
    args = argparse.Namespace(
        out=str(out),
        seeds=3,
        seed_start=5,
        visibility=0.6,
        delta_thz=2.95,
        sigma_thz=0.5,
        baseline=1.0e4,
        tau_span=2.0,
        n_points=201,
    )
    summary = run_study(args)

    frame = pd.read_csv(out)
    assert list(frame["seed"]) == [5, 6, 7]
    assert frame["visibility_hat"].to_numpy() == pytest.approx(0.6, abs=0.05)
    assert list(summary.index) == ["mean", "max"]
    assert summary.loc["max", "delta_rel_error"] < 0.01
    assert out.read_bytes().endswith(b"\n")
