"""Landmark jitter reduction: per-joint constant-velocity Kalman filter plus
an exponential moving average for derived series.

The Kalman state per joint is [x, y, vx, vy]. Only image-plane coordinates
are filtered; depth (z) has a different, non-Gaussian error profile and is
smoothed downstream with the same EMA used for the center of mass.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .errors import NonFiniteState, SingularInnovation
from .landmarks import LandmarkId, LandmarkStream, frames_to_arrays

# Joints observed to be noisy in practice: the distal extremities.
DEFAULT_FILTERED_JOINTS = frozenset(
    {
        LandmarkId.LEFT_WRIST,
        LandmarkId.RIGHT_WRIST,
        LandmarkId.LEFT_ANKLE,
        LandmarkId.RIGHT_ANKLE,
        LandmarkId.LEFT_HEEL,
        LandmarkId.RIGHT_HEEL,
        LandmarkId.LEFT_FOOT_INDEX,
        LandmarkId.RIGHT_FOOT_INDEX,
    }
)

# First-frame covariance: position prior ~ measurement scale, velocity uninformative.
INITIAL_COVARIANCE_DIAG = (1e-2, 1e-2, 1.0, 1.0)

_H = np.array([[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]])
_CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class FilterConfig:
    """Tunable knobs of the landmark filter and CoM smoother."""

    q: float = 0.5
    r: float = 2.5e-5
    filtered_joints: frozenset[LandmarkId] = DEFAULT_FILTERED_JOINTS
    alpha: float = 0.9
    min_visibility: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.r <= 0.0:
            raise ValueError(f"r must be positive, got {self.r}")
        if self.q < 0.0:
            raise ValueError(f"q must be non-negative, got {self.q}")
        if not 0.0 <= self.min_visibility <= 1.0:
            raise ValueError(
                f"min_visibility must be in [0, 1], got {self.min_visibility}"
            )
        object.__setattr__(self, "filtered_joints", frozenset(self.filtered_joints))

    def with_overrides(self, **kwargs) -> "FilterConfig":
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "filtered_joints": sorted(
                LandmarkId(j).name.lower() for j in self.filtered_joints
            ),
            "alpha": self.alpha,
            "min_visibility": self.min_visibility,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FilterConfig":
        kwargs = dict(data)
        joints = kwargs.pop("filtered_joints", None)
        if joints is not None:
            kwargs["filtered_joints"] = parse_joint_names(joints)
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path) -> "FilterConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def parse_joint_names(names: Iterable[str] | str) -> frozenset[LandmarkId]:
    """Resolve joint names (``left_ankle,...``) to ids; empty input disables filtering."""
    if isinstance(names, str):
        names = [n for n in names.split(",") if n.strip()]
    return frozenset(LandmarkId[name.strip().upper()] for name in names)


@dataclass
class KalmanState:
    """Position/velocity estimate with its 4x4 covariance."""

    position: np.ndarray
    velocity: np.ndarray
    covariance: np.ndarray

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.position, self.velocity])


def initial_state(measurement) -> KalmanState:
    """State at the first observation: measured position, zero velocity."""
    z = np.asarray(measurement, dtype=np.float64)
    return KalmanState(
        position=z.copy(),
        velocity=np.zeros(2),
        covariance=np.diag(INITIAL_COVARIANCE_DIAG).astype(np.float64),
    )


def transition_matrix(dt: float) -> np.ndarray:
    return np.array(
        [
            [1.0, 0.0, dt, 0.0],
            [0.0, 1.0, 0.0, dt],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def process_noise(dt: float, q: float) -> np.ndarray:
    """White-noise-acceleration discretization, scaled by intensity ``q``."""
    dt2 = dt * dt
    dt3 = dt2 * dt
    dt4 = dt3 * dt
    return q * np.array(
        [
            [dt4 / 4.0, 0.0, dt3 / 2.0, 0.0],
            [0.0, dt4 / 4.0, 0.0, dt3 / 2.0],
            [dt3 / 2.0, 0.0, dt2, 0.0],
            [0.0, dt3 / 2.0, 0.0, dt2],
        ]
    )


def kf_predict(state: KalmanState, dt: float, q: float) -> KalmanState:
    """Constant-velocity extrapolation of the state and its covariance."""
    if dt < 0:
        raise ValueError(f"dt must be non-negative, got {dt}")
    F = transition_matrix(dt)
    x = F @ state.as_vector()
    P = F @ state.covariance @ F.T + process_noise(dt, q)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(P))):
        raise NonFiniteState("prediction produced non-finite values")
    return KalmanState(position=x[:2], velocity=x[2:], covariance=P)


def kf_update(state: KalmanState, measurement, r: float) -> KalmanState:
    """Fold a position measurement (variance ``r`` per axis) into the state."""
    z = np.asarray(measurement, dtype=np.float64)
    P = state.covariance
    S = _H @ P @ _H.T + r * np.eye(2)
    if np.linalg.cond(S) > _CONDITION_LIMIT:
        raise SingularInnovation(
            f"innovation covariance condition number exceeds {_CONDITION_LIMIT:g}"
        )
    K = P @ _H.T @ np.linalg.inv(S)
    x = state.as_vector()
    x = x + K @ (z - _H @ x)
    P = (np.eye(4) - K @ _H) @ P
    P = 0.5 * (P + P.T)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(P))):
        raise NonFiniteState("update produced non-finite values")
    return KalmanState(position=x[:2], velocity=x[2:], covariance=P)


def filter_xy_series(
    xy: np.ndarray,
    visibility: np.ndarray,
    t_s: np.ndarray,
    config: FilterConfig,
) -> np.ndarray:
    """Filter one joint's (n,2) trajectory sampled at times ``t_s`` (seconds).

    The first frame initializes the state from the raw measurement. Frames
    whose visibility falls below the configured threshold contribute no
    update; the prediction carries through the gap.
    """
    xy = np.asarray(xy, dtype=np.float64)
    n = len(xy)
    out = np.empty_like(xy)
    state = initial_state(xy[0])
    out[0] = state.position
    for k in range(1, n):
        dt = float(t_s[k] - t_s[k - 1])
        try:
            state = kf_predict(state, dt, config.q)
            if visibility[k] >= config.min_visibility:
                state = kf_update(state, xy[k], config.r)
        except (NonFiniteState, SingularInnovation) as exc:
            raise type(exc)(f"{exc} (frame {k})") from exc
        out[k] = state.position
    return out


def filter_joint_series(
    stream: LandmarkStream, joint: LandmarkId, config: FilterConfig
) -> np.ndarray:
    """Filtered (n,2) image-plane positions of one joint across a stream."""
    xyz, vis, t_ms = frames_to_arrays(stream.frames)
    return filter_xy_series(
        xyz[:, joint, :2], vis[:, joint], t_ms / 1000.0, config
    )


def filter_landmarks(stream: LandmarkStream, config: FilterConfig) -> np.ndarray:
    """All landmark coordinates as (n,33,3), with configured joints KF-filtered in x,y."""
    xyz, vis, t_ms = frames_to_arrays(stream.frames)
    t_s = t_ms / 1000.0
    for joint in sorted(config.filtered_joints):
        xyz[:, joint, :2] = filter_xy_series(
            xyz[:, joint, :2], vis[:, joint], t_s, config
        )
    return xyz


def ema_step(prev, raw, alpha: float):
    """One smoothing step: ``alpha * raw + (1 - alpha) * prev``, componentwise.

    Evaluated incrementally as ``prev + alpha * (raw - prev)`` so a constant
    series is a bitwise fixed point.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    prev = np.asarray(prev, dtype=np.float64)
    raw = np.asarray(raw, dtype=np.float64)
    return prev + alpha * (raw - prev)


def ema_series(values: np.ndarray, alpha: float) -> np.ndarray:
    """Smooth a series; the first sample initializes the average to itself."""
    values = np.asarray(values, dtype=np.float64)
    out = np.empty_like(values)
    out[0] = values[0]
    for k in range(1, len(values)):
        out[k] = ema_step(out[k - 1], values[k], alpha)
    return out
