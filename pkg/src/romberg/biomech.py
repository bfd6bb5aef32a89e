"""Body-segment model and center-of-mass estimation.

The 33 landmarks are grouped into weighted segments; the CoM is the
weighted sum of segment positions, each segment collapsing to the midpoint
of its two endpoints. Segment mass fractions are the adjusted
Zatsiorsky-Seluyanov anthropometric values published by de Leva
(J. Biomech. 29, 1996), expressed as percent of total body mass per sex.

Distal segments without reliable endpoint landmarks (mid/lower forearm,
shank) are dropped; the retained fractions are renormalized to sum to one
so the estimate stays translation-equivariant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .filtering import FilterConfig, ema_series, filter_landmarks
from .landmarks import Frame, LandmarkId, LandmarkStream, frames_to_arrays

L = LandmarkId

# Percent of total body mass per segment (de Leva 1996, adjusted ZS parameters).
# "trunk" is the whole torso; "upper_trunk"/"lower_trunk" support the split
# reading where the torso is carried as two separate segments instead.
MASS_PCT = {
    "male": {
        "head": 6.94,
        "trunk": 43.46,
        "upper_trunk": 15.96,
        "lower_trunk": 11.17,
        "upper_arm": 2.71,
        "hand": 0.61,
        "thigh": 14.16,
        "foot": 1.37,
    },
    "female": {
        "head": 6.68,
        "trunk": 42.57,
        "upper_trunk": 15.45,
        "lower_trunk": 12.47,
        "upper_arm": 2.55,
        "hand": 0.56,
        "thigh": 14.78,
        "foot": 1.29,
    },
}

TRUNK_MODES = ("whole", "split")


@dataclass(frozen=True)
class Segment:
    """A weighted body segment; each endpoint is the mean of a landmark group."""

    name: str
    mass_key: str
    endpoint_a: tuple[LandmarkId, ...]
    endpoint_b: tuple[LandmarkId, ...]


_SHOULDERS = (L.LEFT_SHOULDER, L.RIGHT_SHOULDER)
_HIPS = (L.LEFT_HIP, L.RIGHT_HIP)
_TORSO = _SHOULDERS + _HIPS  # mean of all four = torso center

_COMMON_SEGMENTS = [
    Segment("head", "head", (L.LEFT_EAR,), (L.RIGHT_EAR,)),
    Segment("upper_arm_left", "upper_arm", (L.LEFT_SHOULDER,), (L.LEFT_ELBOW,)),
    Segment("upper_arm_right", "upper_arm", (L.RIGHT_SHOULDER,), (L.RIGHT_ELBOW,)),
    Segment("hand_left", "hand", (L.LEFT_WRIST,), (L.LEFT_WRIST,)),
    Segment("hand_right", "hand", (L.RIGHT_WRIST,), (L.RIGHT_WRIST,)),
    Segment("thigh_left", "thigh", (L.LEFT_HIP,), (L.LEFT_KNEE,)),
    Segment("thigh_right", "thigh", (L.RIGHT_HIP,), (L.RIGHT_KNEE,)),
    Segment("foot_left", "foot", (L.LEFT_HEEL,), (L.LEFT_FOOT_INDEX,)),
    Segment("foot_right", "foot", (L.RIGHT_HEEL,), (L.RIGHT_FOOT_INDEX,)),
]

_WHOLE_TRUNK = [Segment("trunk", "trunk", _SHOULDERS, _HIPS)]
_SPLIT_TRUNK = [
    Segment("upper_trunk", "upper_trunk", _SHOULDERS, _TORSO),
    Segment("lower_trunk", "lower_trunk", _TORSO, _HIPS),
]


def segments_for(trunk_mode: str = "whole") -> list[Segment]:
    if trunk_mode not in TRUNK_MODES:
        raise ValueError(f"trunk_mode must be one of {TRUNK_MODES}, got {trunk_mode!r}")
    trunk = _WHOLE_TRUNK if trunk_mode == "whole" else _SPLIT_TRUNK
    return trunk + list(_COMMON_SEGMENTS)


@dataclass(frozen=True)
class SegmentMassTable:
    """Per-segment raw mass percentages and renormalized weights for one sex."""

    sex: str
    trunk_mode: str
    segments: tuple[Segment, ...]
    raw_pct: tuple[float, ...]
    weights: tuple[float, ...]

    @property
    def raw_total_pct(self) -> float:
        return sum(self.raw_pct)

    def raw_for(self, mass_key: str) -> float:
        for seg, pct in zip(self.segments, self.raw_pct):
            if seg.mass_key == mass_key:
                return pct
        raise KeyError(mass_key)


def load_mass_overrides(path) -> dict:
    """Read a replacement mass-percentage map (same shape as ``MASS_PCT``)."""
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def mass_table(
    sex: str,
    trunk_mode: str = "whole",
    overrides: dict | None = None,
) -> SegmentMassTable:
    """Build the weighted segment table for a subject."""
    if sex not in MASS_PCT:
        raise ValueError(f"sex must be one of {tuple(MASS_PCT)}, got {sex!r}")
    pct_map = dict(MASS_PCT[sex])
    if overrides is not None:
        pct_map.update(overrides.get(sex, overrides) if isinstance(overrides, dict) else {})
    segments = tuple(segments_for(trunk_mode))
    raw = tuple(float(pct_map[s.mass_key]) for s in segments)
    if any(p <= 0 for p in raw):
        raise ValueError("all mass fractions must be positive")
    total = sum(raw)
    weights = tuple(p / total for p in raw)
    return SegmentMassTable(sex, trunk_mode, segments, raw, weights)


def _endpoint(points: np.ndarray, group: tuple[LandmarkId, ...]) -> np.ndarray:
    if len(group) == 1:
        return points[group[0]]
    return points[list(group)].mean(axis=0)


def segment_point(points: np.ndarray, segment: Segment) -> np.ndarray:
    """Segment position on a (33,3) coordinate array: midpoint of its endpoints."""
    a = _endpoint(points, segment.endpoint_a)
    b = _endpoint(points, segment.endpoint_b)
    return 0.5 * (a + b)


def _frame_points(frame: Frame) -> np.ndarray:
    return np.array([[lm.x, lm.y, lm.z] for lm in frame.landmarks], dtype=np.float64)


def segment_position(frame: Frame, segment: Segment) -> np.ndarray:
    """Segment position for a frame as [x, y, z]."""
    return segment_point(_frame_points(frame), segment)


def compute_com(frame_or_points, table: SegmentMassTable) -> np.ndarray:
    """Center of mass [x, y, z]: weighted sum of segment positions."""
    if isinstance(frame_or_points, Frame):
        points = _frame_points(frame_or_points)
    else:
        points = np.asarray(frame_or_points, dtype=np.float64)
    com = np.zeros(3)
    for segment, weight in zip(table.segments, table.weights):
        com += weight * segment_point(points, segment)
    return com


def segment_positions(points: np.ndarray, table: SegmentMassTable) -> np.ndarray:
    """All segment positions for one frame, shape (n_segments, 3)."""
    return np.array([segment_point(points, s) for s in table.segments])


@dataclass(frozen=True)
class ComSample:
    """Per-frame center of mass, before and after smoothing."""

    t_ms: int
    raw: np.ndarray
    smoothed: np.ndarray
    z_raw: float
    z_smoothed: float


def com_samples_from_points(
    points: np.ndarray, t_ms: np.ndarray, table: SegmentMassTable, alpha: float
) -> list[ComSample]:
    """CoM series over pre-filtered (n,33,3) coordinates, EMA-smoothed."""
    raw = np.array([compute_com(points[k], table) for k in range(len(points))])
    smoothed = ema_series(raw, alpha)
    return [
        ComSample(
            t_ms=int(t_ms[k]),
            raw=raw[k, :2].copy(),
            smoothed=smoothed[k, :2].copy(),
            z_raw=float(raw[k, 2]),
            z_smoothed=float(smoothed[k, 2]),
        )
        for k in range(len(points))
    ]


def com_series(
    stream: LandmarkStream,
    table: SegmentMassTable,
    config: FilterConfig | None = None,
) -> list[ComSample]:
    """Filter a stream's landmarks and produce the smoothed CoM trajectory."""
    config = config or FilterConfig()
    points = filter_landmarks(stream, config)
    _, _, t_ms = frames_to_arrays(stream.frames)
    return com_samples_from_points(points, t_ms, table, config.alpha)
