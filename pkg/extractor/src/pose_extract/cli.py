"""Command line: video in, landmark stream out."""

from __future__ import annotations

import argparse
import json
import sys

from .backends import BACKENDS
from .extract import ExtractionConfig, ExtractionError, extract


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pose-extract",
        description="Extract a 33-point landmark stream from a video file",
    )
    parser.add_argument("--video", required=True, help="input video file")
    parser.add_argument("--out", required=True, help="output stream file")
    parser.add_argument(
        "--blur-kernel", type=int, default=5, help="denoising Gaussian kernel (odd)"
    )
    parser.add_argument(
        "--bg-blur-kernel",
        type=int,
        default=95,
        help="background-suppression Gaussian kernel (odd)",
    )
    parser.add_argument(
        "--person-mask",
        choices=("on", "off"),
        default="on",
        help="mask the person and blur everything else before inference",
    )
    parser.add_argument(
        "--backend",
        choices=sorted(BACKENDS),
        default="mediapipe",
        help="pose model backend",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = ExtractionConfig(
            video=args.video,
            out=args.out,
            blur_kernel=args.blur_kernel,
            background_blur_kernel=args.bg_blur_kernel,
            person_mask=args.person_mask == "on",
            backend=args.backend,
        )
        summary = extract(config)
    except (ExtractionError, RuntimeError, ValueError, OSError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1
    print(
        f"wrote {summary.frames_written} of {summary.frames_read} frames to "
        f"{summary.out_path} (skipped {summary.frames_skipped}; model {summary.model})"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
