from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
import pandas as pd

from lossyhom.analytic.scan import hom_scan
from lossyhom.config import RunConfig, load_config
from lossyhom.core.beam_splitter import BeamSplitter, require_physical
from lossyhom.errors import ConfigError, FitError, NotPhysical
from lossyhom.experiment import (
    FIGURES,
    PAIRS,
    FigureConfig,
    FitHint,
    FitResult,
    fit_scan,
    g2_sweep,
    records_to_frame,
    reproduce_figure,
    simulate_counts,
)
from lossyhom.io.datasets import read_counts, to_csv_text, write_dataset
from lossyhom.material import HysteresisModel, film_tra, response_for, splitter_for
from lossyhom.oracle import sweep_check
from lossyhom.report import render_fit_report, render_oracle_report, write_report

logger = logging.getLogger("lossyhom.cli")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_PHYSICAL = 3


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        write_report(text, output)
        logger.info("wrote %s", output)


def _emit_frame(frame: pd.DataFrame, schema: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(to_csv_text(frame, schema))
    else:
        write_dataset(frame, output, schema)


def _scan_splitter(config: RunConfig) -> BeamSplitter:
    if config.splitter is not None:
        bs = config.splitter
    else:
        bs = splitter_for(config.material, config.scan.theta_c, config.scan.branch)
    require_physical(bs)
    return bs


def run_material(config: RunConfig, output: Path | None) -> int:
    rows = []
    for branch in config.branches:
        for theta in config.material_thetas:
            if config.stack is not None:
                if not isinstance(config.material, HysteresisModel):
                    raise ConfigError("stack", "thin-film mode needs the hysteresis model, not a calibration table")
                response = film_tra(config.stack, config.material, theta, branch)
            else:
                response = response_for(config.material, theta, branch)
            rows.append((theta, branch.value, *response))
    frame = pd.DataFrame(rows, columns=["theta_c", "branch", "T", "R", "A", "phi_rt"])
    _emit_frame(frame, "material", output)
    return EXIT_OK


def _counts_frame(config: RunConfig, bs: BeamSplitter) -> pd.DataFrame:
    taus = np.linspace(config.scan.tau_min, config.scan.tau_max, config.scan.n_points)
    return records_to_frame(simulate_counts(bs, config.source.state(), config.detector, taus, seed=config.seed))


def run_scan(config: RunConfig, output: Path | None, counts_path: Path | None = None) -> int:
    bs = _scan_splitter(config)
    scan = hom_scan(bs, config.source.state(), config.scan.tau_min, config.scan.tau_max, config.scan.n_points)
    _emit_frame(scan.to_frame(), "scan", output)
    if counts_path is not None:
        write_dataset(_counts_frame(config, bs), counts_path, "counts")
    return EXIT_OK


def run_counts(config: RunConfig, output: Path | None) -> int:
    _emit_frame(_counts_frame(config, _scan_splitter(config)), "counts", output)
    return EXIT_OK


def run_sweep(config: RunConfig, output: Path | None) -> int:
    frame = g2_sweep(config.material, config.source, config.sweep_thetas, config.sweep_branch)
    _emit_frame(frame, "sweep", output)
    return EXIT_OK


def run_fit(config: RunConfig, input_path: Path, output: Path | None) -> int:
    records = read_counts(input_path)
    hint = FitHint(delta=config.source.delta, sigma=config.source.sigma)
    present = {r.pair for r in records}
    outcomes: dict[str, FitResult | FitError] = {}
    for pair in (p for p in PAIRS if p in present):
        try:
            outcomes[pair] = fit_scan([r for r in records if r.pair == pair], hint)
        except FitError as exc:
            logger.warning("pair %s not fitted: %s", pair, exc)
            outcomes[pair] = exc
    _emit(render_fit_report(outcomes), output)
    if all(isinstance(outcome, FitError) for outcome in outcomes.values()):
        return EXIT_CHECK_FAILED
    return EXIT_OK


def run_oracle_check(n_cases: int, seed: int, tol: float, output: Path | None) -> int:
    report = sweep_check(n_cases=n_cases, seed=seed, tol=tol)
    _emit(render_oracle_report(report), output)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def run_demo(config: RunConfig, fig_id: str, out_dir: Path) -> int:
    figure_config = FigureConfig(
        source=config.material,
        detector=config.detector,
        tau_min=config.scan.tau_min,
        tau_max=config.scan.tau_max,
        n_points=config.scan.n_points,
        seed=config.seed,
    )
    bundle = reproduce_figure(fig_id, figure_config)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, frame in bundle.datasets.items():
        write_dataset(frame, out_dir / f"{name}.csv")
    (out_dir / "manifest.json").write_bytes((bundle.manifest.to_json() + "\n").encode("utf-8"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="INI run configuration (default: $LOSSYHOM_CONFIG)")
    common.add_argument("--seed", type=int, default=None, help="Overrides [run] seed (default 0)")
    common.add_argument("-o", "--output", default=None, help="Output file (default: [run] output, else stdout)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="lossyhom", description="Two-photon interference on lossy VO2 beam splitters")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("material", parents=[common], help="Film T, R, A and exchange phase versus temperature")
    scan_parser = sub.add_parser("scan", parents=[common], help="Analytic coincidence probabilities versus delay")
    scan_parser.add_argument("--counts", default=None, help="Also write a Poisson counts dataset to this path")
    sub.add_parser("counts", parents=[common], help="Poisson coincidence counts per detector pair")
    sub.add_parser("sweep", parents=[common], help="g2(0) versus film temperature")

    fit_parser = sub.add_parser("fit", parents=[common], help="Fit every detector pair of a counts CSV")
    fit_parser.add_argument("input", help="Counts CSV (pair,tau_ps,counts,expected)")

    oracle_parser = sub.add_parser("oracle-check", parents=[common], help="Cross-check formulas against both oracles")
    oracle_parser.add_argument("-n", "--cases", type=int, default=1000)
    oracle_parser.add_argument("--tol", type=float, default=1e-6)

    demo_parser = sub.add_parser("demo", parents=[common], help="Write the datasets behind one figure")
    demo_parser.add_argument("fig_id", choices=FIGURES)
    demo_parser.add_argument("--out-dir", default=None, help="Directory for the bundle (default: figures/<fig_id>)")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _dispatch(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.command == "oracle-check" and args.cases < 1:
        parser.error("--cases must be >= 1")
    config = load_config(args.config)
    seed = config.seed if args.seed is None else args.seed
    config = replace(config, seed=seed)
    output = Path(args.output) if args.output else config.output

    if args.command == "material":
        return run_material(config, output)
    if args.command == "scan":
        return run_scan(config, output, Path(args.counts) if args.counts else None)
    if args.command == "counts":
        return run_counts(config, output)
    if args.command == "sweep":
        return run_sweep(config, output)
    if args.command == "fit":
        return run_fit(config, Path(args.input), output)
    if args.command == "oracle-check":
        return run_oracle_check(args.cases, seed, args.tol, output)
    out_dir = Path(args.out_dir) if args.out_dir else (output or Path("figures")) / args.fig_id
    return run_demo(config, args.fig_id, out_dir)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return _dispatch(args, parser)
    except NotPhysical as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PHYSICAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
