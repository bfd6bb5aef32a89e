"""Landmark data model and the line-oriented wire format.

One frame per line as a compact JSON object::

    {"v": 1, "frame": 0, "t_ms": 0, "w": 1080, "h": 1920,
     "landmarks": [{"i": 0, "x": 0.5, "y": 0.2, "z": -0.01, "vis": 1.0}, ...]}

Lines starting with ``#`` are comments; ``#meta key=value ...`` lines carry
stream metadata (``sex``, ``view``). Unknown meta keys are ignored so that
producers may annotate streams freely.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadLandmarkCount,
    EmptyStream,
    MalformedLine,
    NonMonotoneTime,
)

N_LANDMARKS = 33
SCHEMA_VERSION = 1

# Estimators extrapolate slightly outside the image; anything further out is junk.
COORD_MIN = -0.5
COORD_MAX = 1.5

SEXES = ("male", "female")
VIEWS = ("front", "side")


class LandmarkId(IntEnum):
    """The 33-point full-body landmark topology."""

    NOSE = 0
    LEFT_EYE_INNER = 1
    LEFT_EYE = 2
    LEFT_EYE_OUTER = 3
    RIGHT_EYE_INNER = 4
    RIGHT_EYE = 5
    RIGHT_EYE_OUTER = 6
    LEFT_EAR = 7
    RIGHT_EAR = 8
    MOUTH_LEFT = 9
    MOUTH_RIGHT = 10
    LEFT_SHOULDER = 11
    RIGHT_SHOULDER = 12
    LEFT_ELBOW = 13
    RIGHT_ELBOW = 14
    LEFT_WRIST = 15
    RIGHT_WRIST = 16
    LEFT_PINKY = 17
    RIGHT_PINKY = 18
    LEFT_INDEX = 19
    RIGHT_INDEX = 20
    LEFT_THUMB = 21
    RIGHT_THUMB = 22
    LEFT_HIP = 23
    RIGHT_HIP = 24
    LEFT_KNEE = 25
    RIGHT_KNEE = 26
    LEFT_ANKLE = 27
    RIGHT_ANKLE = 28
    LEFT_HEEL = 29
    RIGHT_HEEL = 30
    LEFT_FOOT_INDEX = 31
    RIGHT_FOOT_INDEX = 32


@dataclass(frozen=True)
class Landmark:
    """One body keypoint in image-normalized coordinates (y grows downward)."""

    x: float
    y: float
    z: float
    visibility: float


@dataclass(frozen=True)
class SubjectMeta:
    """Out-of-band stream metadata."""

    sex: str
    view: str

    def __post_init__(self):
        if self.sex not in SEXES:
            raise ValueError(f"sex must be one of {SEXES}, got {self.sex!r}")
        if self.view not in VIEWS:
            raise ValueError(f"view must be one of {VIEWS}, got {self.view!r}")


@dataclass(frozen=True)
class Frame:
    """One video frame's landmarks with its timestamp and source dimensions."""

    frame_index: int
    t_ms: int
    width_px: int
    height_px: int
    landmarks: tuple[Landmark, ...]

    def landmark(self, lid: LandmarkId) -> Landmark:
        return self.landmarks[lid]


@dataclass
class LandmarkStream:
    """Ordered frames plus subject metadata (may be absent until analysis)."""

    frames: list[Frame]
    meta: SubjectMeta | None = None

    def __len__(self) -> int:
        return len(self.frames)


def _validate_landmark(entry: dict, pos: int, line_no: int) -> Landmark:
    try:
        i = entry["i"]
        x = float(entry["x"])
        y = float(entry["y"])
        z = float(entry["z"])
        vis = float(entry["vis"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedLine(f"bad landmark entry at index {pos}: {exc}", line_no)
    if i != pos:
        raise MalformedLine(
            f"landmark ids must be 0..32 in order; saw i={i} at index {pos}", line_no
        )
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
        raise MalformedLine(f"non-finite coordinate on landmark {pos}", line_no)
    if not (COORD_MIN <= x <= COORD_MAX and COORD_MIN <= y <= COORD_MAX):
        raise MalformedLine(
            f"landmark {pos} coordinates outside [{COORD_MIN}, {COORD_MAX}]", line_no
        )
    if not (0.0 <= vis <= 1.0):
        raise MalformedLine(f"landmark {pos} visibility outside [0, 1]", line_no)
    return Landmark(x, y, z, vis)


def _parse_frame_line(line: str, line_no: int) -> Frame:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedLine(f"invalid JSON: {exc.msg}", line_no)
    if not isinstance(obj, dict):
        raise MalformedLine("frame record must be a JSON object", line_no)
    if obj.get("v") != SCHEMA_VERSION:
        raise MalformedLine(f"unsupported schema version {obj.get('v')!r}", line_no)
    try:
        frame_index = int(obj["frame"])
        t_ms = int(obj["t_ms"])
        w = int(obj["w"])
        h = int(obj["h"])
        lms = obj["landmarks"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedLine(f"missing or invalid field: {exc}", line_no)
    if frame_index < 0:
        raise MalformedLine("frame index must be non-negative", line_no)
    if w <= 0 or h <= 0:
        raise MalformedLine("image dimensions must be positive", line_no)
    if not isinstance(lms, list):
        raise MalformedLine("landmarks must be an array", line_no)
    if len(lms) != N_LANDMARKS:
        raise BadLandmarkCount(
            f"expected {N_LANDMARKS} landmarks, got {len(lms)}", line_no
        )
    landmarks = tuple(_validate_landmark(e, i, line_no) for i, e in enumerate(lms))
    return Frame(frame_index, t_ms, w, h, landmarks)


def _parse_meta_line(line: str, line_no: int, found: dict) -> None:
    for token in line[len("#meta") :].split():
        if "=" not in token:
            raise MalformedLine(f"meta token {token!r} is not key=value", line_no)
        key, value = token.split("=", 1)
        found[key] = value


def parse_stream(
    data: bytes | str,
    *,
    sex: str | None = None,
    view: str | None = None,
) -> LandmarkStream:
    """Parse the wire format into a validated stream.

    ``sex``/``view`` arguments override any ``#meta`` header values. Raises
    the wire-format errors from :mod:`romberg.errors` with line numbers.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    frames: list[Frame] = []
    header: dict[str, str] = {}
    prev_t: int | None = None
    prev_index: int | None = None
    for line_no, line in enumerate(data.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if stripped.startswith("#meta"):
                _parse_meta_line(stripped, line_no, header)
            continue
        frame = _parse_frame_line(stripped, line_no)
        if prev_t is not None and frame.t_ms <= prev_t:
            raise NonMonotoneTime(
                f"t_ms {frame.t_ms} does not increase past {prev_t}", line_no
            )
        if prev_index is not None and frame.frame_index <= prev_index:
            raise MalformedLine(
                f"frame index {frame.frame_index} does not increase past {prev_index}",
                line_no,
            )
        prev_t = frame.t_ms
        prev_index = frame.frame_index
        frames.append(frame)
    if not frames:
        raise EmptyStream("input contains no frame records")

    eff_sex = sex or header.get("sex")
    eff_view = view or header.get("view")
    meta = None
    if eff_sex is not None or eff_view is not None:
        if eff_sex not in SEXES:
            raise MalformedLine(f"meta sex {eff_sex!r} must be one of {SEXES}")
        if eff_view not in VIEWS:
            raise MalformedLine(f"meta view {eff_view!r} must be one of {VIEWS}")
        meta = SubjectMeta(eff_sex, eff_view)
    return LandmarkStream(frames, meta)


def write_stream(stream: LandmarkStream) -> str:
    """Serialize a stream; ``parse_stream(write_stream(s))`` reproduces ``s`` exactly."""
    lines = []
    if stream.meta is not None:
        lines.append(f"#meta sex={stream.meta.sex} view={stream.meta.view}")
    for frame in stream.frames:
        obj = {
            "v": SCHEMA_VERSION,
            "frame": frame.frame_index,
            "t_ms": frame.t_ms,
            "w": frame.width_px,
            "h": frame.height_px,
            "landmarks": [
                {"i": i, "x": lm.x, "y": lm.y, "z": lm.z, "vis": lm.visibility}
                for i, lm in enumerate(frame.landmarks)
            ],
        }
        lines.append(json.dumps(obj, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def read_stream_file(
    path, *, sex: str | None = None, view: str | None = None
) -> LandmarkStream:
    with open(path, "rb") as fh:
        return parse_stream(fh.read(), sex=sex, view=view)


def write_stream_file(path, stream: LandmarkStream) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(write_stream(stream))


def frames_to_arrays(
    frames: Sequence[Frame],
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Bulk view of a frame sequence: (n,33,3) xyz, (n,33) visibility, (n,) t_ms."""
    n = len(frames)
    xyz = np.empty((n, N_LANDMARKS, 3), dtype=np.float64)
    vis = np.empty((n, N_LANDMARKS), dtype=np.float64)
    t_ms = np.empty(n, dtype=np.int64)
    for k, frame in enumerate(frames):
        t_ms[k] = frame.t_ms
        for j, lm in enumerate(frame.landmarks):
            xyz[k, j, 0] = lm.x
            xyz[k, j, 1] = lm.y
            xyz[k, j, 2] = lm.z
            vis[k, j] = lm.visibility
    return xyz, vis, t_ms


def arrays_to_frames(
    xyz: np.ndarray,
    vis: np.ndarray,
    t_ms: Iterable[int],
    width_px: int,
    height_px: int,
    frame_indices: Iterable[int] | None = None,
) -> list[Frame]:
    """Inverse of :func:`frames_to_arrays` for stream construction."""
    frames = []
    indices = range(len(xyz)) if frame_indices is None else frame_indices
    for k, (idx, t) in enumerate(zip(indices, t_ms)):
        landmarks = tuple(
            Landmark(
                float(xyz[k, j, 0]),
                float(xyz[k, j, 1]),
                float(xyz[k, j, 2]),
                float(vis[k, j]),
            )
            for j in range(N_LANDMARKS)
        )
        frames.append(Frame(int(idx), int(t), width_px, height_px, landmarks))
    return frames
