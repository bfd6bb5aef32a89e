"""Evaluation harness: ground-truth weight distribution from dual-scale
readings (or simulator truth tables), mean absolute error against the
pipeline's output, and a summary table.

Manifest format, one trial per line (CSV):

    stream_path,s_right_kg,s_left_kg,label      # dual-scale ground truth
    stream_path,@truth_path,label               # simulator truth table

Paths are resolved relative to the manifest file. Each trial is scored on
the maximum RWD of its stream's observable axis (lateral for front views,
anterior-posterior for side views); rows are labelled with that axis.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

from .biomech import mass_table
from .errors import EmptyManifest, LengthMismatch, PipelineError, ZeroTotalWeight
from .filtering import FilterConfig
from .landmarks import read_stream_file
from .rwd import rwd_series
from .simulate import GroundTruth


@dataclass(frozen=True)
class ScaleReading:
    """One dual-scale trial: kilograms under each foot."""

    s_right_kg: float
    s_left_kg: float
    label: str = ""

    def __post_init__(self):
        if self.s_right_kg < 0 or self.s_left_kg < 0:
            raise ValueError("scale readings must be non-negative")


def scale_wd(reading: ScaleReading) -> tuple[float, float, float]:
    """Weight-distribution fractions (right, left) and the true RWD percent."""
    total = reading.s_right_kg + reading.s_left_kg
    if total <= 0:
        raise ZeroTotalWeight(f"scale readings sum to {total}")
    wd_right = reading.s_right_kg / total
    wd_left = reading.s_left_kg / total
    return wd_right, wd_left, 100.0 * abs(wd_right - wd_left)


def mae(predicted, truth) -> float:
    """Mean absolute error between paired percent sequences."""
    predicted = list(predicted)
    truth = list(truth)
    if len(predicted) != len(truth):
        raise LengthMismatch(
            f"predicted has {len(predicted)} entries, truth has {len(truth)}"
        )
    if not predicted:
        raise ValueError("sequences must be non-empty")
    return sum(abs(p - t) for p, t in zip(predicted, truth)) / len(predicted)


@dataclass(frozen=True)
class EvalSummary:
    """Range/mean/SD of the true RWD values plus prediction MAE."""

    n_trials: int
    rwd_min_pct: float
    rwd_max_pct: float
    rwd_mean_pct: float
    rwd_sd_pct: float
    mae_pct: float

    def to_dict(self) -> dict:
        return {
            "n_trials": self.n_trials,
            "rwd_min_pct": self.rwd_min_pct,
            "rwd_max_pct": self.rwd_max_pct,
            "rwd_mean_pct": self.rwd_mean_pct,
            "rwd_sd_pct": self.rwd_sd_pct,
            "mae_pct": self.mae_pct,
        }


def summarize(trials) -> EvalSummary:
    """Summary over (predicted_pct, true_pct) pairs; SD is the population SD."""
    trials = list(trials)
    if not trials:
        raise ValueError("need at least one trial")
    predicted = [p for p, _ in trials]
    truth = [t for _, t in trials]
    mean = sum(truth) / len(truth)
    variance = sum((t - mean) ** 2 for t in truth) / len(truth)
    return EvalSummary(
        n_trials=len(trials),
        rwd_min_pct=min(truth),
        rwd_max_pct=max(truth),
        rwd_mean_pct=mean,
        rwd_sd_pct=math.sqrt(variance),
        mae_pct=mae(predicted, truth),
    )


def format_summary_table(rows: list[tuple[str, EvalSummary]]) -> str:
    """Text table with one row per labelled summary."""
    header = ("Label", "RWD", "Num. Trials", "Mean Absolute Error")
    body = []
    for label, s in rows:
        body.append(
            (
                label,
                f"{s.rwd_min_pct:.2f}%-{s.rwd_max_pct:.2f}% "
                f"Mean: {s.rwd_mean_pct:.2f}% SD: {s.rwd_sd_pct:.2f}%",
                str(s.n_trials),
                f"±{s.mae_pct:.4f}%",
            )
        )
    widths = [max(len(h), *(len(r[i]) for r in body)) for i, h in enumerate(header)]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("-+-".join("-" * w for w in widths))
    for r in body:
        lines.append(" | ".join(c.ljust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ManifestTrial:
    line_no: int
    stream_path: Path
    label: str
    scale: ScaleReading | None = None
    truth_path: Path | None = None


@dataclass(frozen=True)
class TrialResult:
    label: str
    axis: str
    predicted_pct: float
    true_pct: float

    @property
    def abs_error(self) -> float:
        return abs(self.predicted_pct - self.true_pct)


def parse_manifest(path) -> list[ManifestTrial]:
    """Read the trial manifest; raises ``EmptyManifest`` when nothing is listed."""
    base = Path(path).parent
    trials = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for line_no, row in enumerate(csv.reader(fh), start=1):
            if not row or (row[0].strip().startswith("#")):
                continue
            cells = [c.strip() for c in row]
            if len(cells) == 3 and cells[1].startswith("@"):
                trials.append(
                    ManifestTrial(
                        line_no=line_no,
                        stream_path=base / cells[0],
                        truth_path=base / cells[1][1:],
                        label=cells[2],
                    )
                )
            elif len(cells) == 4:
                trials.append(
                    ManifestTrial(
                        line_no=line_no,
                        stream_path=base / cells[0],
                        label=cells[3],
                        scale=ScaleReading(float(cells[1]), float(cells[2]), cells[3]),
                    )
                )
            else:
                raise ValueError(
                    f"manifest line {line_no}: expected "
                    "'stream,s_right_kg,s_left_kg,label' or 'stream,@truth,label'"
                )
    if not trials:
        raise EmptyManifest(f"{path} lists no trials")
    return trials


def evaluate_trial(
    trial: ManifestTrial,
    config: FilterConfig,
    on_degenerate: str = "skip",
    trunk_mode: str = "whole",
    mass_overrides: dict | None = None,
) -> TrialResult:
    """Score one manifest trial on its observable axis."""
    stream = read_stream_file(trial.stream_path)
    if stream.meta is None:
        raise PipelineError(
            f"{trial.stream_path}: stream carries no sex/view metadata"
        )
    table = mass_table(stream.meta.sex, trunk_mode, mass_overrides)
    samples, _ = rwd_series(stream, table, config, on_degenerate=on_degenerate)
    axis = "lateral" if stream.meta.view == "front" else "ap"
    if axis == "lateral":
        values = [s.lateral_pct for s in samples if s.lateral_pct is not None]
    else:
        values = [s.ap_pct for s in samples]
    if not values:
        raise PipelineError(f"{trial.stream_path}: no usable samples on axis {axis}")
    predicted = max(values)

    if trial.scale is not None:
        _, _, true_pct = scale_wd(trial.scale)
    else:
        with open(trial.truth_path, "r", encoding="utf-8") as fh:
            truth = GroundTruth.from_csv(fh.read())
        column = truth.lateral_pct if axis == "lateral" else truth.ap_pct
        true_pct = float(column.max())
    return TrialResult(trial.label, axis, predicted, true_pct)


def run_manifest(
    manifest_path,
    config: FilterConfig | None = None,
    on_degenerate: str = "skip",
    trunk_mode: str = "whole",
    mass_overrides: dict | None = None,
) -> tuple[list[TrialResult], EvalSummary | None, list[str]]:
    """Evaluate every trial; collect per-trial errors instead of aborting."""
    config = config or FilterConfig()
    trials = parse_manifest(manifest_path)
    results: list[TrialResult] = []
    errors: list[str] = []
    for trial in trials:
        try:
            results.append(
                evaluate_trial(trial, config, on_degenerate, trunk_mode, mass_overrides)
            )
        except (PipelineError, OSError, ValueError) as exc:
            errors.append(f"trial '{trial.label}' (line {trial.line_no}): {exc}")
    summary = (
        summarize([(r.predicted_pct, r.true_pct) for r in results]) if results else None
    )
    return results, summary, errors


def results_csv(results: list[TrialResult]) -> str:
    buf = io.StringIO()
    buf.write("label,axis,predicted_pct,true_pct,abs_error_pct\n")
    for r in results:
        buf.write(
            f"{r.label},{r.axis},{r.predicted_pct:.6f},{r.true_pct:.6f},"
            f"{r.abs_error:.6f}\n"
        )
    return buf.getvalue()
