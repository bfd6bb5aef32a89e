"""Verdict rule: the maximum observed weight-distribution imbalance per axis
is compared against published clinical bands.

Electric posturography places normal subjects at a 6-7% body-weight
deviation laterally and 12-14% anterior-posteriorly; values inside those
bands are reported as borderline rather than forced to either side.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoUsableFrames
from .rwd import RwdSample

NEGATIVE = "negative"
BORDERLINE = "borderline"
POSITIVE = "positive"
_SEVERITY = {NEGATIVE: 0, BORDERLINE: 1, POSITIVE: 2}

EXIT_CODES = {NEGATIVE: 0, BORDERLINE: 2, POSITIVE: 3}


@dataclass(frozen=True)
class Thresholds:
    """Per-axis decision bands in percent of body weight (closed intervals)."""

    lateral_band: tuple[float, float] = (6.0, 7.0)
    ap_band: tuple[float, float] = (12.0, 14.0)

    def __post_init__(self):
        for name, (low, high) in (
            ("lateral_band", self.lateral_band),
            ("ap_band", self.ap_band),
        ):
            if not 0.0 < low < high:
                raise ValueError(f"{name} must satisfy 0 < low < high, got {low}, {high}")


@dataclass(frozen=True)
class Diagnosis:
    """Per-axis and overall verdicts with the evidence behind them."""

    lateral_verdict: str
    ap_verdict: str
    overall: str
    max_lateral_pct: float | None
    max_ap_pct: float | None
    lateral_available: bool
    ap_available: bool
    n_frames_used: int
    n_frames_skipped: int


def band_verdict(max_pct: float, band: tuple[float, float]) -> str:
    low, high = band
    if max_pct < low:
        return NEGATIVE
    if max_pct > high:
        return POSITIVE
    return BORDERLINE


def diagnose(
    samples: list[RwdSample],
    thresholds: Thresholds | None = None,
    n_skipped: int = 0,
) -> Diagnosis:
    """Judge a series by the maximum value observed on each available axis."""
    thresholds = thresholds or Thresholds()
    if not samples:
        raise NoUsableFrames("no frames survived degenerate-frame skipping")

    lateral_values = [s.lateral_pct for s in samples if s.lateral_pct is not None]
    ap_values = [s.ap_pct for s in samples]

    if lateral_values:
        max_lateral = max(lateral_values)
        lateral_verdict = band_verdict(max_lateral, thresholds.lateral_band)
        lateral_available = True
    else:
        max_lateral = None
        lateral_verdict = NEGATIVE
        lateral_available = False

    if ap_values:
        max_ap = max(ap_values)
        ap_verdict = band_verdict(max_ap, thresholds.ap_band)
        ap_available = True
    else:
        max_ap = None
        ap_verdict = NEGATIVE
        ap_available = False

    overall = max((lateral_verdict, ap_verdict), key=_SEVERITY.__getitem__)
    return Diagnosis(
        lateral_verdict=lateral_verdict,
        ap_verdict=ap_verdict,
        overall=overall,
        max_lateral_pct=max_lateral,
        max_ap_pct=max_ap,
        lateral_available=lateral_available,
        ap_available=ap_available,
        n_frames_used=len(samples),
        n_frames_skipped=n_skipped,
    )


def exit_code(diagnosis: Diagnosis) -> int:
    return EXIT_CODES[diagnosis.overall]


def report_dict(
    diagnosis: Diagnosis,
    thresholds: Thresholds,
    pipeline_config: dict,
) -> dict:
    """Machine-readable report; mirrors what the CLI writes to ``--report``."""
    return {
        "overall": diagnosis.overall,
        "lateral": {
            "verdict": diagnosis.lateral_verdict,
            "max_pct": diagnosis.max_lateral_pct,
            "available": diagnosis.lateral_available,
        },
        "ap": {
            "verdict": diagnosis.ap_verdict,
            "max_pct": diagnosis.max_ap_pct,
            "available": diagnosis.ap_available,
        },
        "thresholds": {
            "lateral_band": list(thresholds.lateral_band),
            "ap_band": list(thresholds.ap_band),
        },
        "frames": {
            "used": diagnosis.n_frames_used,
            "skipped": diagnosis.n_frames_skipped,
        },
        "pipeline_config": pipeline_config,
    }
