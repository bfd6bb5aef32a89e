"""Matplotlib renderings written next to the delimited outputs."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .diagnosis import Thresholds
from .evaluation import TrialResult
from .rwd import RwdSample


def _band(ax, band, color):
    ax.axhspan(band[0], band[1], color=color, alpha=0.15, lw=0)
    ax.axhline(band[0], color=color, lw=0.8, ls="--", alpha=0.6)
    ax.axhline(band[1], color=color, lw=0.8, ls="--", alpha=0.6)


def render_analysis_figures(
    samples: list[RwdSample],
    thresholds: Thresholds,
    out_dir,
) -> list[Path]:
    """CoM path and RWD time series for one analyzed stream."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    t = [s.t_ms / 1000.0 for s in samples]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(
        [s.com.raw[0] for s in samples],
        [s.com.raw[1] for s in samples],
        color="lightgray",
        lw=0.8,
        label="raw",
    )
    ax1.plot(
        [s.com.smoothed[0] for s in samples],
        [s.com.smoothed[1] for s in samples],
        color="tab:blue",
        lw=1.2,
        label="smoothed",
    )
    ax1.invert_yaxis()  # image y grows downward
    ax1.set_xlabel("x (normalized)")
    ax1.set_ylabel("y (normalized)")
    ax1.set_title("Center-of-mass path")
    ax1.legend(loc="best", fontsize=8)

    ax2.plot(t, [s.com.smoothed[0] for s in samples], label="x", lw=1.0)
    ax2.plot(t, [s.com.smoothed[1] for s in samples], label="y", lw=1.0)
    ax2.plot(t, [s.com.z_smoothed for s in samples], label="z", lw=1.0)
    ax2.set_xlabel("time (s)")
    ax2.set_ylabel("coordinate")
    ax2.set_title("Smoothed CoM over time")
    ax2.legend(loc="best", fontsize=8)
    fig.tight_layout()
    path = out_dir / "com_path.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(9, 4))
    lateral = [(s.t_ms / 1000.0, s.lateral_pct) for s in samples if s.lateral_pct is not None]
    if lateral:
        ax.plot(*zip(*lateral), color="tab:red", lw=1.0, label="lateral")
        _band(ax, thresholds.lateral_band, "tab:red")
    ax.plot(t, [s.ap_pct for s in samples], color="tab:green", lw=1.0, label="anterior-posterior")
    _band(ax, thresholds.ap_band, "tab:green")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("RWD (% body weight)")
    ax.set_title("Relative weight distribution")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    path = out_dir / "rwd_timeseries.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written


def render_evaluation_figures(results: list[TrialResult], out_dir) -> list[Path]:
    """Predicted-vs-true scatter and per-trial absolute errors."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    fig, ax = plt.subplots(figsize=(5, 5))
    truth = [r.true_pct for r in results]
    pred = [r.predicted_pct for r in results]
    lim = max(truth + pred + [1.0]) * 1.05
    ax.plot([0, lim], [0, lim], color="gray", lw=0.8, ls="--")
    ax.scatter(truth, pred, s=18, color="tab:blue", alpha=0.8)
    ax.set_xlabel("true RWD (%)")
    ax.set_ylabel("predicted RWD (%)")
    ax.set_title("Predicted vs true")
    ax.set_xlim(0, lim)
    ax.set_ylim(0, lim)
    fig.tight_layout()
    path = out_dir / "predicted_vs_true.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(max(5, 0.25 * len(results)), 4))
    ax.bar(range(len(results)), [r.abs_error for r in results], color="tab:orange")
    ax.set_xlabel("trial")
    ax.set_ylabel("|error| (%)")
    ax.set_title("Absolute error per trial")
    fig.tight_layout()
    path = out_dir / "trial_errors.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
