"""Shared fixtures and stream-building helpers."""

from __future__ import annotations

import numpy as np
import pytest

from romberg.landmarks import (
    N_LANDMARKS,
    Frame,
    Landmark,
    LandmarkStream,
    SubjectMeta,
)


def make_frame(
    xyz: np.ndarray,
    frame_index: int = 0,
    t_ms: int = 0,
    vis: float = 1.0,
    width_px: int = 1080,
    height_px: int = 1920,
) -> Frame:
    landmarks = tuple(
        Landmark(float(xyz[j, 0]), float(xyz[j, 1]), float(xyz[j, 2]), vis)
        for j in range(N_LANDMARKS)
    )
    return Frame(frame_index, t_ms, width_px, height_px, landmarks)


def make_stream(
    xyz_per_frame: np.ndarray,
    fps: float = 30.0,
    sex: str = "male",
    view: str = "front",
) -> LandmarkStream:
    frames = [
        make_frame(xyz_per_frame[k], frame_index=k, t_ms=int(round(k * 1000.0 / fps)))
        for k in range(len(xyz_per_frame))
    ]
    return LandmarkStream(frames, SubjectMeta(sex, view))


def transform_stream(
    stream: LandmarkStream, scale: float = 1.0, offset=(0.0, 0.0, 0.0)
) -> LandmarkStream:
    """Uniformly scale then translate every coordinate (bypasses wire validation)."""
    offset = np.asarray(offset, dtype=np.float64)
    frames = []
    for f in stream.frames:
        landmarks = tuple(
            Landmark(
                lm.x * scale + offset[0],
                lm.y * scale + offset[1],
                lm.z * scale + offset[2],
                lm.visibility,
            )
            for lm in f.landmarks
        )
        frames.append(Frame(f.frame_index, f.t_ms, f.width_px, f.height_px, landmarks))
    return LandmarkStream(frames, stream.meta)


@pytest.fixture
def rng():
    return np.random.default_rng(202406)


def random_pose(rng, spread: float = 0.35) -> np.ndarray:
    """A random but in-range 33-landmark pose around the image center."""
    xyz = np.empty((N_LANDMARKS, 3))
    xyz[:, 0] = 0.5 + rng.uniform(-spread, spread, N_LANDMARKS)
    xyz[:, 1] = 0.5 + rng.uniform(-spread, spread, N_LANDMARKS)
    xyz[:, 2] = rng.uniform(-0.2, 0.2, N_LANDMARKS)
    return xyz
