"""Render the bundled synthetic test video: a marker-coded mannequin.

A human-shaped figure (dark-gray body parts) stands on a noisy light
background; every one of the 33 landmark sites carries a circular marker
with that landmark's unique hue so the classical ``marker`` backend can
detect it. The upper body sways gently; a few frames contain only the
background to exercise the no-person skip path.

Run directly to (re)generate tests/data/mannequin.mp4.
"""

from __future__ import annotations

from pathlib import Path

import cv2
import numpy as np

from pose_extract.backends import marker_color_bgr

WIDTH, HEIGHT = 960, 720
FPS = 30.0
N_FRAMES = 90
ABSENT_FRAMES = frozenset({40, 41, 70, 71})

SUBJECT_H = 510.0  # pixels
CENTER_X = 480.0
ANKLE_Y = 650.0
STANCE_HALF = 0.175  # of subject height

BODY_COLOR = (80, 80, 80)

# landmark id -> (lateral offset, height above ankle), subject-height units;
# face and hand sites are spread wider than anatomy so markers never touch
LAYOUT = {
    0: (0.0, 0.93),  # nose
    1: (0.025, 0.915), 2: (0.045, 0.92), 3: (0.065, 0.915),  # left eye
    4: (-0.025, 0.915), 5: (-0.045, 0.92), 6: (-0.065, 0.915),  # right eye
    7: (0.085, 0.90), 8: (-0.085, 0.90),  # ears
    9: (0.025, 0.88), 10: (-0.025, 0.88),  # mouth
    11: (0.115, 0.79), 12: (-0.115, 0.79),  # shoulders
    13: (0.14, 0.62), 14: (-0.14, 0.62),  # elbows
    15: (0.15, 0.47), 16: (-0.15, 0.47),  # wrists
    17: (0.165, 0.405), 18: (-0.165, 0.405),  # pinkies
    19: (0.145, 0.395), 20: (-0.145, 0.395),  # index fingers
    21: (0.16, 0.435), 22: (-0.16, 0.435),  # thumbs
    23: (0.065, 0.47), 24: (-0.065, 0.47),  # hips
    25: (0.055, 0.28), 26: (-0.055, 0.28),  # knees
    27: (STANCE_HALF, 0.0), 28: (-STANCE_HALF, 0.0),  # ankles
    29: (STANCE_HALF - 0.02, -0.05), 30: (-(STANCE_HALF - 0.02), -0.05),  # heels
    31: (STANCE_HALF + 0.03, -0.06), 32: (-(STANCE_HALF + 0.03), -0.06),  # toes
}

PLANTED = {27, 28, 29, 30, 31, 32}

MARKER_RADIUS = {i: 4 if i <= 10 or 17 <= i <= 22 else 6 for i in range(33)}


def site(i: int, sway_px: float) -> tuple[int, int]:
    lat, up = LAYOUT[i]
    x = CENTER_X + lat * SUBJECT_H + (0.0 if i in PLANTED else sway_px)
    y = ANKLE_Y - up * SUBJECT_H
    return int(round(x)), int(round(y))


def background(rng: np.random.Generator) -> np.ndarray:
    # light gray with coarse grayscale blotches; zero saturation by design
    coarse = rng.integers(218, 244, size=(18, 24), dtype=np.uint8)
    gray = cv2.resize(coarse, (WIDTH, HEIGHT), interpolation=cv2.INTER_LINEAR)
    return cv2.merge([gray, gray, gray])


def draw_body(frame: np.ndarray, sway_px: float) -> None:
    def limb(a, b, width):
        cv2.line(frame, site(a, sway_px), site(b, sway_px), BODY_COLOR, width)

    torso = np.array(
        [site(11, sway_px), site(12, sway_px), site(24, sway_px), site(23, sway_px)]
    )
    cv2.fillConvexPoly(frame, torso, BODY_COLOR)
    head_x = int(round(CENTER_X + sway_px))
    head_y = int(round(ANKLE_Y - 0.91 * SUBJECT_H))
    cv2.circle(frame, (head_x, head_y), 34, BODY_COLOR, -1)
    limb(11, 13, 12)
    limb(13, 15, 12)
    limb(12, 14, 12)
    limb(14, 16, 12)
    limb(23, 25, 14)
    limb(25, 27, 14)
    limb(24, 26, 14)
    limb(26, 28, 14)
    limb(29, 31, 10)
    limb(30, 32, 10)


def draw_markers(frame: np.ndarray, sway_px: float) -> None:
    for i in range(33):
        cv2.circle(frame, site(i, sway_px), MARKER_RADIUS[i], marker_color_bgr(i), -1)


def render(path: Path) -> None:
    rng = np.random.default_rng(90210)
    writer = cv2.VideoWriter(
        str(path), cv2.VideoWriter_fourcc(*"mp4v"), FPS, (WIDTH, HEIGHT)
    )
    if not writer.isOpened():
        raise RuntimeError("cannot open mp4 writer")
    for k in range(N_FRAMES):
        frame = background(rng)
        if k not in ABSENT_FRAMES:
            sway_px = 8.0 * np.sin(2 * np.pi * 0.3 * k / FPS)
            draw_body(frame, sway_px)
            draw_markers(frame, sway_px)
        writer.write(frame)
    writer.release()


if __name__ == "__main__":
    out = Path(__file__).parent / "data" / "mannequin.mp4"
    out.parent.mkdir(parents=True, exist_ok=True)
    render(out)
    print(f"wrote {out}")
