"""Pose-model backends.

``MediaPipeBackend`` wraps the real pose and person-segmentation models
(requires the optional ``mediapipe`` dependency). ``MarkerBackend`` is a
deterministic classical detector for synthetic rig footage where every
landmark site carries a uniquely hued circular marker; it exists so the
adapter contract can be exercised without an ML runtime.
"""

from __future__ import annotations

import numpy as np

N_LANDMARKS = 33

# One hue per landmark id (OpenCV hue range 0..179), spaced so that codec
# chroma loss cannot alias neighbours at the +-2 matching tolerance.
MARKER_HUES = np.array([round(i * 5.3) for i in range(N_LANDMARKS)], dtype=np.int32)
_HUE_TOL = 2
_MIN_PIXELS = 4


def marker_color_bgr(landmark_id: int) -> tuple[int, int, int]:
    """Paint color for one landmark site in a synthetic video."""
    import cv2

    hsv = np.array([[[MARKER_HUES[landmark_id], 255, 255]]], dtype=np.uint8)
    b, g, r = cv2.cvtColor(hsv, cv2.COLOR_HSV2BGR)[0, 0]
    return int(b), int(g), int(r)


class MarkerBackend:
    """Detects the 33 colored markers; a frame counts as 'person present'
    only when every marker is found."""

    name = "marker-1"

    def person_mask(self, frame_bgr: np.ndarray) -> np.ndarray:
        import cv2

        hsv = cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2HSV)
        s, v = hsv[..., 1], hsv[..., 2]
        # body pixels are dark, markers saturated; background is light gray
        return ((s > 60) | (v < 140)).astype(np.float32)

    def detect(self, frame_bgr: np.ndarray) -> np.ndarray | None:
        import cv2

        hsv = cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2HSV)
        h = hsv[..., 0].astype(np.int32)
        strong = (hsv[..., 1] >= 140) & (hsv[..., 2] >= 140)
        height, width = h.shape
        out = np.empty((N_LANDMARKS, 4))
        for i in range(N_LANDMARKS):
            match = strong & (np.abs(h - int(MARKER_HUES[i])) <= _HUE_TOL)
            ys, xs = np.nonzero(match)
            if len(xs) < _MIN_PIXELS:
                return None
            out[i] = (xs.mean() / width, ys.mean() / height, 0.0, 1.0)
        return out

    def close(self) -> None:
        pass


class MediaPipeBackend:
    """Person segmentation plus full-body pose landmarks via mediapipe."""

    def __init__(self, model_complexity: int = 1):
        try:
            import mediapipe as mp
        except ImportError as exc:
            raise RuntimeError(
                "the mediapipe backend needs the optional 'mediapipe' package "
                "(pip install pose-extract[mediapipe])"
            ) from exc
        self._mp = mp
        self.name = f"mediapipe-pose-{mp.__version__}"
        self._pose = mp.solutions.pose.Pose(
            static_image_mode=False,
            model_complexity=model_complexity,
            min_detection_confidence=0.5,
            min_tracking_confidence=0.5,
        )
        self._segmenter = mp.solutions.selfie_segmentation.SelfieSegmentation(
            model_selection=0
        )

    def person_mask(self, frame_bgr: np.ndarray) -> np.ndarray | None:
        import cv2

        rgb = cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2RGB)
        result = self._segmenter.process(rgb)
        if result.segmentation_mask is None:
            return None
        return result.segmentation_mask

    def detect(self, frame_bgr: np.ndarray) -> np.ndarray | None:
        import cv2

        rgb = cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2RGB)
        result = self._pose.process(rgb)
        if result.pose_landmarks is None:
            return None
        landmarks = result.pose_landmarks.landmark
        if len(landmarks) != N_LANDMARKS:
            return None
        out = np.empty((N_LANDMARKS, 4))
        for i, lm in enumerate(landmarks):
            out[i] = (lm.x, lm.y, lm.z, lm.visibility)
        return out

    def close(self) -> None:
        self._pose.close()
        self._segmenter.close()


BACKENDS = {"mediapipe": MediaPipeBackend, "marker": MarkerBackend}


def make_backend(name: str):
    try:
        return BACKENDS[name]()
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; choose from {sorted(BACKENDS)}")
