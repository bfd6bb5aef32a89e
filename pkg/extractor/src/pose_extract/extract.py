"""Frame loop: decode video, preprocess, run the pose backend, emit the
wire format.

Per frame: a light Gaussian blur removes sensor noise, a person mask
confines detail to the subject while everything else gets a heavy blur
(drawing the detector's attention without deleting pixels), then the pose
backend runs on the composite. Frames where no person is detected are
omitted and counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .backends import make_backend
from .wire import frame_line, meta_line

MASK_THRESHOLD = 0.5


class ExtractionError(Exception):
    """Unreadable input or too few detections to be useful."""


@dataclass(frozen=True)
class ExtractionConfig:
    """Adapter settings; kernel sizes must be odd."""

    video: str | Path
    out: str | Path
    blur_kernel: int = 5
    background_blur_kernel: int = 95
    person_mask: bool = True
    backend: str = "mediapipe"

    def __post_init__(self):
        for name, k in (
            ("blur_kernel", self.blur_kernel),
            ("background_blur_kernel", self.background_blur_kernel),
        ):
            if k < 1 or k % 2 == 0:
                raise ValueError(f"{name} must be an odd integer >= 1, got {k}")


@dataclass(frozen=True)
class ExtractionSummary:
    frames_read: int
    frames_written: int
    frames_skipped: int
    out_path: Path
    model: str


def _preprocess(frame, config: ExtractionConfig, backend):
    import cv2

    blurred = cv2.GaussianBlur(frame, (config.blur_kernel, config.blur_kernel), 0)
    if not config.person_mask:
        return blurred
    mask = backend.person_mask(blurred)
    if mask is None:
        return blurred
    k = config.background_blur_kernel
    background = cv2.GaussianBlur(blurred, (k, k), 0)
    keep = (mask >= MASK_THRESHOLD)[..., None]
    return np.where(keep, blurred, background)


def extract(config: ExtractionConfig) -> ExtractionSummary:
    """Run the adapter; writes the stream file and returns the counts.

    Raises ``ExtractionError`` when the video is unreadable or more than
    half of its frames yield no person detection (the partial output file
    is still written for inspection).
    """
    import cv2

    cap = cv2.VideoCapture(str(config.video))
    if not cap.isOpened():
        raise ExtractionError(f"cannot open video {config.video}")
    backend = make_backend(config.backend)
    lines = [meta_line(backend.name)]
    frames_read = 0
    frames_written = 0
    prev_t_ms = -1
    try:
        while True:
            ok, frame = cap.read()
            if not ok:
                break
            pos_ms = cap.get(cv2.CAP_PROP_POS_MSEC)
            frames_read += 1
            # container timestamps; degenerate containers fall back to +1ms
            t_ms = max(int(round(pos_ms)), prev_t_ms + 1)
            composite = _preprocess(frame, config, backend)
            landmarks = backend.detect(composite)
            if landmarks is None:
                continue
            height, width = frame.shape[:2]
            lines.append(
                frame_line(frames_read - 1, t_ms, width, height, landmarks)
            )
            prev_t_ms = t_ms
            frames_written += 1
    finally:
        cap.release()
        backend.close()

    out_path = Path(config.out)
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    skipped = frames_read - frames_written
    summary = ExtractionSummary(
        frames_read=frames_read,
        frames_written=frames_written,
        frames_skipped=skipped,
        out_path=out_path,
        model=backend.name,
    )
    if frames_read == 0:
        raise ExtractionError(f"{config.video} contains no decodable frames")
    if skipped > frames_read / 2:
        raise ExtractionError(
            f"no person detected in {skipped} of {frames_read} frames "
            f"(output kept at {out_path})"
        )
    return summary
