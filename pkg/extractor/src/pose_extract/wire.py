"""Landmark stream wire format, producer side.

One frame per line as compact JSON; ``#meta`` header lines carry
annotations (this producer records the model identity). Subject sex/view
are left for the operator to supply downstream.
"""

from __future__ import annotations

import json

import numpy as np

N_LANDMARKS = 33
SCHEMA_VERSION = 1


def meta_line(model: str) -> str:
    return f"#meta model={model}"


def frame_line(
    frame_index: int, t_ms: int, width: int, height: int, landmarks: np.ndarray
) -> str:
    """Serialize one frame; ``landmarks`` is (33, 4) rows of x, y, z, visibility."""
    if landmarks.shape != (N_LANDMARKS, 4):
        raise ValueError(f"expected (33, 4) landmarks, got {landmarks.shape}")
    obj = {
        "v": SCHEMA_VERSION,
        "frame": int(frame_index),
        "t_ms": int(t_ms),
        "w": int(width),
        "h": int(height),
        "landmarks": [
            {
                "i": i,
                "x": float(landmarks[i, 0]),
                "y": float(landmarks[i, 1]),
                "z": float(landmarks[i, 2]),
                "vis": float(landmarks[i, 3]),
            }
            for i in range(N_LANDMARKS)
        ],
    }
    return json.dumps(obj, separators=(",", ":"))
