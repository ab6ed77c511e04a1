from __future__ import annotations

from pathlib import Path

from lossyhom.errors import FitError
from lossyhom.experiment.fitting import FitResult
from lossyhom.oracle.sweep import SweepReport

_FIT_FIELDS = (
    ("baseline", "counts"),
    ("visibility", ""),
    ("delta_hat", "rad/ps"),
    ("sigma_hat", "rad/ps"),
    ("tau0_hat", "ps"),
    ("phase_hat", "rad"),
    ("residual_rms", "counts"),
)


def render_fit_report(outcomes: dict[str, FitResult | FitError]) -> str:
    lines = ["# Scan fit report", ""]
    for pair, outcome in outcomes.items():
        lines.append(f"[{pair}]")
        if isinstance(outcome, FitError):
            lines.append(f"status       = {type(outcome).__name__}: {outcome}")
        else:
            lines.append("status       = ok")
            for name, unit in _FIT_FIELDS:
                suffix = f" {unit}" if unit else ""
                lines.append(f"{name:<12} = {getattr(outcome, name):.9g}{suffix}")
            lines.append(f"{'n_points':<12} = {outcome.n_points}")
        lines.append("")
    return "\n".join(lines)


def render_oracle_report(report: SweepReport) -> str:
    lines = [
        "# Oracle cross-check",
        "",
        f"cases     = {report.n_cases}",
        f"seed      = {report.seed}",
        f"tol       = {report.tol:.3g}",
        "",
        "| comparison | channel | max abs deviation |",
        "|---|---|---:|",
    ]
    for row in report.to_frame().itertuples(index=False):
        lines.append(f"| {row.comparison} | {row.channel} | {row.max_abs_deviation:.3e} |")
    lines += [
        "",
        f"normalisation error = {report.max_norm_error:.3e}",
        f"worst case index    = {report.worst_case}",
        f"result              = {'PASS' if report.passed else 'FAIL'}",
        "",
    ]
    return "\n".join(lines)


def write_report(text: str, output_path: str | Path) -> Path:
    out = Path(output_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(text.encode("utf-8"))
    return out
