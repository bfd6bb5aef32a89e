"""Command-line surface: ``analyze``, ``simulate``, ``evaluate``.

Exit codes of ``analyze`` encode the verdict (0 negative, 2 borderline,
3 positive); every command exits 1 on error with one machine-parseable
JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import biomech, evaluation
from .diagnosis import Thresholds, diagnose, exit_code, report_dict
from .errors import PipelineError
from .filtering import FilterConfig, parse_joint_names
from .landmarks import SEXES, VIEWS, read_stream_file, write_stream
from .rwd import DEGENERATE_POLICIES, rwd_series, write_series_csv
from .simulate import SwayScenario, generate


def _parse_band(text: str) -> tuple[float, float]:
    try:
        low, high = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'low,high', got {text!r}")
    return (low, high)


def _add_filter_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("filtering")
    group.add_argument("--filter-config", help="JSON file with filter settings")
    group.add_argument("--alpha", type=float, help="CoM smoothing factor in (0, 1]")
    group.add_argument("--kf-q", type=float, help="Kalman process-noise intensity")
    group.add_argument("--kf-r", type=float, help="Kalman measurement-noise variance")
    group.add_argument(
        "--kf-joints",
        help="comma-separated joint names to Kalman-filter (empty string disables)",
    )
    group.add_argument(
        "--min-visibility",
        type=float,
        help="visibility below which a frame contributes no measurement update",
    )


def _add_table_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("body model")
    group.add_argument(
        "--trunk-mode",
        choices=biomech.TRUNK_MODES,
        default="whole",
        help="carry the torso as one segment or as upper+lower halves",
    )
    group.add_argument(
        "--mass-table", help="JSON file overriding the segment mass percentages"
    )


def _filter_config(args) -> FilterConfig:
    config = (
        FilterConfig.from_file(args.filter_config)
        if args.filter_config
        else FilterConfig()
    )
    joints = None
    if args.kf_joints is not None:
        joints = parse_joint_names(args.kf_joints)
    return config.with_overrides(
        alpha=args.alpha,
        q=args.kf_q,
        r=args.kf_r,
        min_visibility=args.min_visibility,
        filtered_joints=joints,
    )


def _mass_overrides(args) -> dict | None:
    return biomech.load_mass_overrides(args.mass_table) if args.mass_table else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="romberg",
        description="Balance analysis from pose-landmark streams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="diagnose a landmark stream")
    p_an.add_argument("--input", required=True, help="landmark stream file")
    p_an.add_argument("--sex", choices=SEXES, help="overrides the stream header")
    p_an.add_argument("--view", choices=VIEWS, help="overrides the stream header")
    p_an.add_argument(
        "--lateral-band",
        type=_parse_band,
        default=(6.0, 7.0),
        help="lateral borderline band as 'low,high' percent (default 6,7)",
    )
    p_an.add_argument(
        "--ap-band",
        type=_parse_band,
        default=(12.0, 14.0),
        help="anterior-posterior borderline band (default 12,14)",
    )
    p_an.add_argument(
        "--on-degenerate",
        choices=DEGENERATE_POLICIES,
        default="skip",
        help="skip degenerate frames (default) or fail the run",
    )
    p_an.add_argument("--report", help="write the JSON report here")
    p_an.add_argument("--series", help="write the per-frame CSV series here")
    p_an.add_argument("--figures", help="render figures into this directory")
    _add_filter_flags(p_an)
    _add_table_flags(p_an)

    p_sim = sub.add_parser("simulate", help="generate a synthetic sway stream")
    p_sim.add_argument("--scenario", required=True, help="scenario JSON file")
    p_sim.add_argument("--out-dir", required=True, help="output directory")

    p_ev = sub.add_parser("evaluate", help="score trials listed in a manifest")
    p_ev.add_argument("--manifest", required=True, help="trial manifest CSV")
    p_ev.add_argument("--out-dir", required=True, help="output directory")
    p_ev.add_argument(
        "--on-degenerate", choices=DEGENERATE_POLICIES, default="skip"
    )
    _add_filter_flags(p_ev)
    _add_table_flags(p_ev)
    return parser


def _cmd_analyze(args) -> int:
    stream = read_stream_file(args.input, sex=args.sex, view=args.view)
    if stream.meta is None:
        raise PipelineError(
            "subject sex/view unknown; add a '#meta' header or pass --sex/--view"
        )
    config = _filter_config(args)
    table = biomech.mass_table(stream.meta.sex, args.trunk_mode, _mass_overrides(args))
    thresholds = Thresholds(args.lateral_band, args.ap_band)
    samples, skipped = rwd_series(
        stream, table, config, on_degenerate=args.on_degenerate
    )
    result = diagnose(samples, thresholds, skipped)

    echo = {
        "input": str(args.input),
        "sex": stream.meta.sex,
        "view": stream.meta.view,
        "trunk_mode": args.trunk_mode,
        "on_degenerate": args.on_degenerate,
        "filter": config.to_dict(),
    }
    report = report_dict(result, thresholds, echo)
    if args.report:
        Path(args.report).write_text(
            json.dumps(report, indent=2) + "\n", encoding="utf-8"
        )
    if args.series:
        Path(args.series).write_text(write_series_csv(samples), encoding="utf-8")
    if args.figures:
        from .figures import render_analysis_figures

        render_analysis_figures(samples, thresholds, args.figures)

    lat_max = "n/a" if result.max_lateral_pct is None else f"{result.max_lateral_pct:.3f}%"
    ap_max = "n/a" if result.max_ap_pct is None else f"{result.max_ap_pct:.3f}%"
    print(f"overall: {result.overall}")
    print(f"lateral: {result.lateral_verdict} (max {lat_max})")
    print(f"ap: {result.ap_verdict} (max {ap_max})")
    print(f"frames: {result.n_frames_used} used, {result.n_frames_skipped} skipped")
    return exit_code(result)


def _cmd_simulate(args) -> int:
    scenario = SwayScenario.from_file(args.scenario)
    stream, truth = generate(scenario)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stream_path = out_dir / "stream.jsonl"
    truth_path = out_dir / "truth.csv"
    stream_path.write_text(write_stream(stream), encoding="utf-8", newline="\n")
    truth_path.write_text(truth.to_csv(), encoding="utf-8", newline="\n")
    print(f"wrote {stream_path}")
    print(f"wrote {truth_path}")
    return 0


def _cmd_evaluate(args) -> int:
    config = _filter_config(args)
    results, summary, errors = evaluation.run_manifest(
        args.manifest,
        config,
        on_degenerate=args.on_degenerate,
        trunk_mode=args.trunk_mode,
        mass_overrides=_mass_overrides(args),
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "trials.csv").write_text(
        evaluation.results_csv(results), encoding="utf-8"
    )
    if summary is not None:
        table = evaluation.format_summary_table([("all-trials", summary)])
        (out_dir / "summary.txt").write_text(table, encoding="utf-8")
        (out_dir / "summary.json").write_text(
            json.dumps(summary.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
        from .figures import render_evaluation_figures

        render_evaluation_figures(results, out_dir / "figures")
        print(table, end="")
    if errors:
        for err in errors:
            print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "simulate": _cmd_simulate,
        "evaluate": _cmd_evaluate,
    }
    try:
        return handlers[args.command](args)
    except (PipelineError, OSError, ValueError) as exc:
        line = json.dumps({"error": type(exc).__name__, "message": str(exc)})
        print(line, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
