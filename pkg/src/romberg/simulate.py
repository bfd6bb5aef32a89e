"""Synthetic sway streams with analytically known weight distribution.

A rigid standing skeleton leans about its ankle midpoint like an inverted
pendulum (feet stay planted). The generator inverts the same torque-balance
and lean-angle relations the analyzer applies, so the per-frame ground
truth is exact: a requested lateral amplitude A produces a true
|N_L - N_R| trace of A*|sin(2*pi*f*t)| percent, and likewise for the
anterior-posterior amplitude.

Geometry lives in a body frame (lat, up, dep) anchored at the ankle
midpoint; the view decides how those axes map onto image x/z.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .biomech import SegmentMassTable, mass_table, segment_point
from .errors import InfeasibleScenario
from .landmarks import (
    N_LANDMARKS,
    Frame,
    LandmarkId,
    LandmarkStream,
    SubjectMeta,
    arrays_to_frames,
    frames_to_arrays,
)

L = LandmarkId

IMAGE_WIDTH = 1080
IMAGE_HEIGHT = 1920
GROUND_Y = 0.92
CENTER_X = 0.5
ANKLE_HEIGHT = 0.05  # of subject height, above the ground plane

TRUTH_HEADER = "frame,t_ms,true_lateral_pct,true_ap_pct"

# Landmarks that stay planted while the body leans.
FIXED_LANDMARKS = frozenset(
    {
        L.LEFT_ANKLE,
        L.RIGHT_ANKLE,
        L.LEFT_HEEL,
        L.RIGHT_HEEL,
        L.LEFT_FOOT_INDEX,
        L.RIGHT_FOOT_INDEX,
    }
)


@dataclass(frozen=True)
class AxisSway:
    """Sinusoidal sway on one axis: peak true RWD percent and its frequency."""

    amplitude_pct: float = 0.0
    frequency_hz: float = 0.25


@dataclass(frozen=True)
class SwayScenario:
    """Parametric synthetic trial."""

    sex: str = "male"
    view: str = "front"
    duration_s: float = 10.0
    fps: float = 30.0
    stance_width: float = 0.3
    subject_height: float = 0.75
    lateral_sway: AxisSway = AxisSway()
    ap_sway: AxisSway = AxisSway(frequency_hz=0.2)
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.fps <= 0 or self.duration_s <= 0:
            raise ValueError("fps and duration_s must be positive")
        if self.stance_width <= 0 or self.subject_height <= 0:
            raise ValueError("stance_width and subject_height must be positive")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SwayScenario":
        data = dict(data)
        for key in ("lateral_sway", "ap_sway"):
            if key in data and isinstance(data[key], dict):
                data[key] = AxisSway(**data[key])
        return cls(**data)

    @classmethod
    def from_file(cls, path) -> "SwayScenario":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_file(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


@dataclass
class GroundTruth:
    """Noiseless analytic values per frame."""

    t_ms: np.ndarray
    lateral_pct: np.ndarray
    ap_pct: np.ndarray
    com: np.ndarray  # (n, 3) image coordinates

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(TRUTH_HEADER + "\n")
        for k in range(len(self.t_ms)):
            buf.write(
                f"{k},{int(self.t_ms[k])},"
                f"{self.lateral_pct[k]:.6f},{self.ap_pct[k]:.6f}\n"
            )
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GroundTruth":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != TRUTH_HEADER:
            raise ValueError("not a ground-truth table")
        t_ms, lat, ap = [], [], []
        for ln in lines[1:]:
            _, t, a, b = ln.split(",")
            t_ms.append(int(t))
            lat.append(float(a))
            ap.append(float(b))
        return cls(
            t_ms=np.array(t_ms, dtype=np.int64),
            lateral_pct=np.array(lat),
            ap_pct=np.array(ap),
            com=np.zeros((len(t_ms), 3)),
        )


def _base_offsets(stance_width: float, h: float) -> np.ndarray:
    """Body-frame offsets (lat, up, dep) of every landmark, ankle mid at origin.

    Subject-left landmarks get positive lat, which a front camera sees on
    image-right. CoM-bearing landmarks sit at dep 0 (heel/toe depth offsets
    cancel per foot) so depth sway comes purely from the lean.
    """
    w2 = stance_width / 2.0
    off = np.zeros((N_LANDMARKS, 3))

    def put(lid, lat, up, dep=0.0):
        off[lid] = (lat, up, dep)

    put(L.NOSE, 0.0, 0.91 * h, -0.03 * h)
    for side, s in (("LEFT", 1.0), ("RIGHT", -1.0)):
        put(L[f"{side}_EYE_INNER"], s * 0.015 * h, 0.92 * h, -0.02 * h)
        put(L[f"{side}_EYE"], s * 0.02 * h, 0.92 * h, -0.02 * h)
        put(L[f"{side}_EYE_OUTER"], s * 0.03 * h, 0.92 * h, -0.02 * h)
        put(L[f"{side}_EAR"], s * 0.045 * h, 0.90 * h)
        put(L[f"MOUTH_{side}"], s * 0.012 * h, 0.885 * h, -0.025 * h)
        put(L[f"{side}_SHOULDER"], s * 0.115 * h, 0.79 * h)
        put(L[f"{side}_ELBOW"], s * 0.14 * h, 0.62 * h)
        put(L[f"{side}_WRIST"], s * 0.15 * h, 0.47 * h)
        put(L[f"{side}_PINKY"], s * 0.155 * h, 0.41 * h)
        put(L[f"{side}_INDEX"], s * 0.158 * h, 0.40 * h)
        put(L[f"{side}_THUMB"], s * 0.152 * h, 0.42 * h)
        put(L[f"{side}_HIP"], s * 0.065 * h, 0.47 * h)
        put(L[f"{side}_KNEE"], s * 0.055 * h, 0.28 * h)
        put(L[f"{side}_ANKLE"], s * w2, 0.0)
        put(L[f"{side}_HEEL"], s * w2, -ANKLE_HEIGHT * h, 0.04 * h)
        put(L[f"{side}_FOOT_INDEX"], s * w2, -ANKLE_HEIGHT * h, -0.04 * h)
    return off


def _body_to_image(points_body: np.ndarray, view: str, h: float) -> np.ndarray:
    """Map (lat, up, dep) onto image (x, y, z) for the camera view."""
    ankle_y = GROUND_Y - ANKLE_HEIGHT * h
    out = np.empty_like(points_body)
    lat, up, dep = points_body[..., 0], points_body[..., 1], points_body[..., 2]
    if view == "front":
        out[..., 0] = CENTER_X + lat
        out[..., 2] = dep
    else:
        out[..., 0] = CENTER_X + dep
        out[..., 2] = lat
    out[..., 1] = ankle_y - up
    return out


def _rotating_mass_moments(
    base: np.ndarray, table: SegmentMassTable
) -> tuple[np.ndarray, np.ndarray]:
    """Weighted body-frame CoM of the rotating mass and of the planted feet."""
    rot = np.zeros(3)
    fixed = np.zeros(3)
    for segment, weight in zip(table.segments, table.weights):
        point = weight * segment_point(base, segment)
        if segment.mass_key == "foot":
            fixed += point
        else:
            rot += point
    return rot, fixed


def _lean_rotation(
    base: np.ndarray, phi: float, psi: float, rows: np.ndarray
) -> np.ndarray:
    """Rotate the non-planted landmarks: lateral lean ``phi`` then AP lean ``psi``."""
    c1, s1 = math.cos(phi), math.sin(phi)
    c2, s2 = math.cos(psi), math.sin(psi)
    lat, up, dep = base[rows, 0], base[rows, 1], base[rows, 2]
    lat2 = lat * c1 + up * s1
    up1 = up * c1 - lat * s1
    up2 = up1 * c2 - dep * s2
    dep2 = dep * c2 + up1 * s2
    out = base.copy()
    out[rows, 0] = lat2
    out[rows, 1] = up2
    out[rows, 2] = dep2
    return out


def _rotate_vector(v: np.ndarray, phi: float, psi: float) -> np.ndarray:
    c1, s1 = math.cos(phi), math.sin(phi)
    c2, s2 = math.cos(psi), math.sin(psi)
    lat = v[0] * c1 + v[1] * s1
    up1 = v[1] * c1 - v[0] * s1
    return np.array([lat, up1 * c2 - v[2] * s2, v[2] * c2 + up1 * s2])


def generate(scenario: SwayScenario) -> tuple[LandmarkStream, GroundTruth]:
    """Produce a posed landmark stream and its exact ground truth."""
    for name, sway in (("lateral", scenario.lateral_sway), ("ap", scenario.ap_sway)):
        if not 0.0 <= sway.amplitude_pct <= 100.0:
            raise InfeasibleScenario(
                f"{name} amplitude {sway.amplitude_pct}% would move the CoM "
                "outside the support base"
            )

    h = scenario.subject_height
    base = _base_offsets(scenario.stance_width, h)
    table = mass_table(scenario.sex)
    com_rot, com_fixed = _rotating_mass_moments(base, table)
    height_moment = com_rot[1]  # weighted height of the leaning mass

    # Peak lateral CoM offset the lean must reach: (stance/2) * amplitude.
    peak_offset = (scenario.stance_width / 2.0) * scenario.lateral_sway.amplitude_pct / 100.0
    if peak_offset > height_moment:
        raise InfeasibleScenario(
            f"lateral amplitude {scenario.lateral_sway.amplitude_pct}% needs a CoM "
            f"offset of {peak_offset:g} which this body cannot reach by leaning"
        )

    n = int(round(scenario.duration_s * scenario.fps))
    if n < 1:
        raise InfeasibleScenario("scenario spans less than one frame")
    t_ms = np.array(
        [int(round(k * 1000.0 / scenario.fps)) for k in range(n)], dtype=np.int64
    )

    rows = np.array([j for j in range(N_LANDMARKS) if j not in FIXED_LANDMARKS])
    xyz = np.empty((n, N_LANDMARKS, 3))
    truth_lat = np.empty(n)
    truth_ap = np.empty(n)
    truth_com = np.empty((n, 3))

    w_lat = 2.0 * math.pi * scenario.lateral_sway.frequency_hz
    w_ap = 2.0 * math.pi * scenario.ap_sway.frequency_hz
    amp_lat = scenario.lateral_sway.amplitude_pct / 100.0
    amp_ap = scenario.ap_sway.amplitude_pct / 100.0

    for k in range(n):
        t = t_ms[k] / 1000.0
        rho_lat = amp_lat * math.sin(w_lat * t)
        rho_ap = amp_ap * math.sin(w_ap * t)

        phi = math.asin((scenario.stance_width / 2.0) * rho_lat / height_moment)
        # Solve H*cos(phi)*sin(psi) = rho_ap * (H*cos(phi)*cos(psi) + feet_drop)
        # for psi; feet below the ankle shift the vertical CoM slightly.
        k_eff = height_moment * math.cos(phi)
        g_eff = com_fixed[1]
        psi = math.atan(rho_ap) + math.asin(
            rho_ap * g_eff / (k_eff * math.sqrt(1.0 + rho_ap * rho_ap))
        )

        xyz[k] = _body_to_image(
            _lean_rotation(base, phi, psi, rows), scenario.view, h
        )
        com_body = _rotate_vector(com_rot, phi, psi) + com_fixed
        truth_lat[k] = 100.0 * 2.0 * abs(com_body[0]) / scenario.stance_width
        truth_ap[k] = 100.0 * abs(com_body[2]) / com_body[1]
        truth_com[k] = _body_to_image(com_body, scenario.view, h)

    vis = np.ones((n, N_LANDMARKS))
    frames = arrays_to_frames(xyz, vis, t_ms, IMAGE_WIDTH, IMAGE_HEIGHT)
    stream = LandmarkStream(frames, SubjectMeta(scenario.sex, scenario.view))
    if scenario.noise_sigma > 0:
        stream = inject_noise(stream, scenario.noise_sigma, scenario.seed)
    truth = GroundTruth(t_ms=t_ms, lateral_pct=truth_lat, ap_pct=truth_ap, com=truth_com)
    return stream, truth


def inject_noise(stream: LandmarkStream, sigma: float, seed: int) -> LandmarkStream:
    """Add seeded i.i.d. Gaussian noise to every landmark coordinate."""
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    if sigma == 0:
        return LandmarkStream(list(stream.frames), stream.meta)
    xyz, vis, t_ms = frames_to_arrays(stream.frames)
    rng = np.random.default_rng(seed)
    xyz = xyz + rng.normal(0.0, sigma, xyz.shape)
    frames = arrays_to_frames(
        xyz,
        vis,
        t_ms,
        stream.frames[0].width_px,
        stream.frames[0].height_px,
        frame_indices=[f.frame_index for f in stream.frames],
    )
    return LandmarkStream(frames, stream.meta)
