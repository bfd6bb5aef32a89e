"""Relative weight distribution per frame.

Lateral axis: static torque balance over the two foot support points. With
d_L, d_R the horizontal distances from the CoM to the left/right support,
the support forces are N_L = mg * d_R / (d_L + d_R) and N_R = mg * d_L /
(d_L + d_R); the reported value is 100 * |N_L - N_R| / mg, in which the
subject's mass and gravity cancel, leaving a pure distance ratio.

Anterior-posterior axis: the CoM and the ankle midpoint form a right
triangle; the horizontal weight component is the vertical weight times the
tangent of the lean angle, i.e. 100 * d_h / d_v percent.

Both quantities are ratios of distances, hence invariant under translation
and uniform scaling of the coordinates.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .biomech import ComSample, SegmentMassTable, com_samples_from_points
from .errors import DegenerateLean, DegenerateStance
from .filtering import FilterConfig, ema_series, filter_landmarks
from .landmarks import LandmarkId, LandmarkStream, frames_to_arrays

L = LandmarkId

STANCE_EPS = 1e-6
LEAN_EPS = 1e-6

DEGENERATE_POLICIES = ("skip", "fail")

SERIES_HEADER = "frame,t_ms,lateral_pct,ap_pct,com_x,com_y,com_z"


@dataclass(frozen=True)
class SupportGeometry:
    """Canonicalized support points (image-left first) and the ankle midpoint."""

    left_foot_x: float
    right_foot_x: float
    ankle_mid: np.ndarray


@dataclass(frozen=True)
class RwdSample:
    """Per-frame weight-distribution percentages with the CoM that produced them."""

    frame_index: int
    t_ms: int
    lateral_pct: float | None
    ap_pct: float
    com: ComSample


def lateral_rwd(com_x: float, left_x: float, right_x: float) -> float:
    """Percent support-force imbalance |N_L - N_R| / mg from the torque balance.

    The distance ratio is formed before scaling to percent so the result
    never leaves [0, 100] while the CoM stays between the supports.
    """
    if right_x - left_x <= STANCE_EPS:
        raise DegenerateStance(
            f"support span {right_x - left_x:g} is below {STANCE_EPS:g}"
        )
    d_l = abs(com_x - left_x)
    d_r = abs(right_x - com_x)
    return 100.0 * (abs(d_r - d_l) / (d_l + d_r))


def ap_rwd(d_h: float, d_v: float) -> float:
    """Horizontal weight component as percent of body weight.

    Evaluated as the lean angle followed by its tangent; algebraically this
    is 100 * d_h / d_v, and the two agree to ~(1 + (d_h/d_v)^2) ulps, the
    conditioning limit of the tangent near its pole.
    """
    if d_h < 0:
        raise ValueError(f"d_h must be a magnitude, got {d_h}")
    if d_v <= LEAN_EPS:
        raise DegenerateLean(f"vertical CoM-ankle distance {d_v:g} below {LEAN_EPS:g}")
    theta = math.atan(d_h / d_v)
    return 100.0 * math.tan(theta)


def support_geometry(points: np.ndarray, ankle_mid_z: float) -> SupportGeometry:
    """Per-frame support points (heel/toe midpoints) and ankle midpoint.

    ``ankle_mid_z`` is supplied by the caller because depth is smoothed as a
    series, not per frame.
    """
    sup_a = 0.5 * (points[L.LEFT_HEEL, 0] + points[L.LEFT_FOOT_INDEX, 0])
    sup_b = 0.5 * (points[L.RIGHT_HEEL, 0] + points[L.RIGHT_FOOT_INDEX, 0])
    ankle_xy = 0.5 * (points[L.LEFT_ANKLE, :2] + points[L.RIGHT_ANKLE, :2])
    return SupportGeometry(
        left_foot_x=float(min(sup_a, sup_b)),
        right_foot_x=float(max(sup_a, sup_b)),
        ankle_mid=np.array([ankle_xy[0], ankle_xy[1], ankle_mid_z]),
    )


def rwd_series(
    stream: LandmarkStream,
    table: SegmentMassTable,
    config: FilterConfig | None = None,
    view: str | None = None,
    on_degenerate: str = "skip",
) -> tuple[list[RwdSample], int]:
    """Run the per-frame weight-distribution pipeline over a stream.

    Front view: lateral from image-x torque balance, AP lean from depth.
    Side view: the lateral axis is unobservable (reported as None); AP lean
    comes from image-x. Returns the samples plus the count of frames skipped
    as degenerate (only under the default ``skip`` policy; ``fail`` raises).
    """
    if on_degenerate not in DEGENERATE_POLICIES:
        raise ValueError(
            f"on_degenerate must be one of {DEGENERATE_POLICIES}, got {on_degenerate!r}"
        )
    if view is None:
        if stream.meta is None:
            raise ValueError("view not given and stream carries no metadata")
        view = stream.meta.view

    config = config or FilterConfig()
    points = filter_landmarks(stream, config)
    _, _, t_ms = frames_to_arrays(stream.frames)
    com_samples = com_samples_from_points(points, t_ms, table, config.alpha)

    raw_ankle_z = 0.5 * (points[:, L.LEFT_ANKLE, 2] + points[:, L.RIGHT_ANKLE, 2])
    ankle_z = ema_series(raw_ankle_z, config.alpha)

    samples: list[RwdSample] = []
    skipped = 0
    for k, frame in enumerate(stream.frames):
        geom = support_geometry(points[k], float(ankle_z[k]))
        com = com_samples[k]
        try:
            d_v = abs(float(com.smoothed[1]) - float(geom.ankle_mid[1]))
            if view == "front":
                lateral = lateral_rwd(
                    float(com.smoothed[0]), geom.left_foot_x, geom.right_foot_x
                )
                d_h = abs(com.z_smoothed - float(geom.ankle_mid[2]))
            else:
                lateral = None
                d_h = abs(float(com.smoothed[0]) - float(geom.ankle_mid[0]))
            ap = ap_rwd(d_h, d_v)
        except (DegenerateStance, DegenerateLean) as exc:
            if on_degenerate == "fail":
                raise type(exc)(f"{exc} (frame {frame.frame_index})") from exc
            skipped += 1
            continue
        samples.append(
            RwdSample(
                frame_index=frame.frame_index,
                t_ms=int(t_ms[k]),
                lateral_pct=lateral,
                ap_pct=ap,
                com=com,
            )
        )
    return samples, skipped


def write_series_csv(samples: list[RwdSample]) -> str:
    """Delimited export of a series, one row per non-degenerate frame."""
    buf = io.StringIO()
    buf.write(SERIES_HEADER + "\n")
    for s in samples:
        lateral = "" if s.lateral_pct is None else f"{s.lateral_pct:.6f}"
        buf.write(
            f"{s.frame_index},{s.t_ms},{lateral},{s.ap_pct:.6f},"
            f"{s.com.smoothed[0]:.6f},{s.com.smoothed[1]:.6f},{s.com.z_smoothed:.6f}\n"
        )
    return buf.getvalue()
