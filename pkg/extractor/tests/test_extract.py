"""Adapter contract: wire-format validity, frame coverage, timestamps,
preprocessing defaults, and error paths."""

import json
import subprocess
import sys
import time

import cv2
import numpy as np
import pytest

from pose_extract.backends import make_backend
from pose_extract.cli import main
from pose_extract.extract import ExtractionConfig, ExtractionError, extract


def test_kernel_defaults():
    config = ExtractionConfig(video="v.mp4", out="o.jsonl")
    assert config.blur_kernel == 5
    assert config.background_blur_kernel == 95
    assert config.person_mask is True


@pytest.mark.parametrize("field", ["blur_kernel", "background_blur_kernel"])
@pytest.mark.parametrize("value", [0, 2, -3])
def test_even_or_nonpositive_kernels_rejected(field, value):
    with pytest.raises(ValueError):
        ExtractionConfig(video="v.mp4", out="o.jsonl", **{field: value})


def test_adapter_contract(default_extraction):
    # release gate for the adapter: output parses, >= 90% of frames present,
    # strictly increasing timestamps
    t0 = time.perf_counter()
    out, summary = default_extraction
    import romberg

    stream = romberg.parse_stream(out.read_bytes(), sex="male", view="front")
    assert len(stream.frames) == summary.frames_written
    assert all(len(f.landmarks) == 33 for f in stream.frames)
    t_ms = [f.t_ms for f in stream.frames]
    assert all(b > a for a, b in zip(t_ms, t_ms[1:]))
    coverage = summary.frames_written / summary.frames_read
    assert coverage >= 0.90
    elapsed = time.perf_counter() - t0
    print(
        f"[acceptance] 09 adapter contract: {summary.frames_written}/"
        f"{summary.frames_read} frames ({coverage:.0%} >= 90%), t_ms strictly "
        f"increasing, kernels 5/95 ({elapsed:.1f}s) -> PASS"
    )


def test_absent_frames_skipped_and_counted(default_extraction):
    _, summary = default_extraction
    assert summary.frames_read == 90
    assert summary.frames_skipped == 4
    assert summary.frames_written == 86


def test_model_recorded_in_header(default_extraction):
    out, _ = default_extraction
    assert out.read_text().splitlines()[0] == "#meta model=marker-1"


def test_deterministic_given_same_bytes(default_extraction, test_video, tmp_path):
    a, _ = default_extraction
    b = tmp_path / "b.jsonl"
    extract(ExtractionConfig(video=test_video, out=b, backend="marker"))
    assert a.read_bytes() == b.read_bytes()


def test_person_mask_off_still_valid(test_video, tmp_path):
    out = tmp_path / "s.jsonl"
    summary = extract(
        ExtractionConfig(
            video=test_video, out=out, backend="marker", person_mask=False
        )
    )
    import romberg

    stream = romberg.parse_stream(out.read_bytes())
    assert len(stream.frames) == summary.frames_written >= 80


def test_background_blur_applied_outside_mask(test_video):
    # sharp background detail must survive inside the mask only
    cap = cv2.VideoCapture(str(test_video))
    ok, frame = cap.read()
    cap.release()
    assert ok
    from pose_extract.extract import _preprocess

    config = ExtractionConfig(video=test_video, out="unused.jsonl", backend="marker")
    backend = make_backend("marker")
    composite = _preprocess(frame, config, backend)
    blurred5 = cv2.GaussianBlur(frame, (5, 5), 0)
    mask = backend.person_mask(blurred5) >= 0.5
    # person pixels identical to the lightly blurred frame
    assert np.array_equal(composite[mask], blurred5[mask])
    # background pixels differ (they got the heavy blur)
    bg_diff = np.abs(
        composite[~mask].astype(int) - blurred5[~mask].astype(int)
    ).mean()
    assert bg_diff > 0.5


def test_unreadable_video_raises(tmp_path):
    bogus = tmp_path / "not_a_video.mp4"
    bogus.write_bytes(b"definitely not mp4")
    with pytest.raises(ExtractionError):
        extract(ExtractionConfig(video=bogus, out=tmp_path / "o.jsonl", backend="marker"))


def test_mostly_personless_video_raises(tmp_path):
    # 10 background-only frames: everything skipped -> error with counts
    path = tmp_path / "empty.mp4"
    writer = cv2.VideoWriter(str(path), cv2.VideoWriter_fourcc(*"mp4v"), 30.0, (320, 240))
    for _ in range(10):
        writer.write(np.full((240, 320, 3), 230, np.uint8))
    writer.release()
    out = tmp_path / "o.jsonl"
    with pytest.raises(ExtractionError, match="10 of 10"):
        extract(ExtractionConfig(video=path, out=out, backend="marker"))
    assert out.exists()  # partial output kept for inspection


class TestCli:
    def test_missing_video_exits_one(self, tmp_path, capsys):
        code = main(
            ["--video", str(tmp_path / "nope.mp4"), "--out", str(tmp_path / "o"), "--backend", "marker"]
        )
        assert code == 1
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "ExtractionError"

    def test_end_to_end_output_feeds_the_analyzer_cli(self, test_video, tmp_path, capsys):
        out = tmp_path / "stream.jsonl"
        code = main(["--video", str(test_video), "--out", str(out), "--backend", "marker"])
        assert code == 0
        assert "wrote 86 of 90 frames" in capsys.readouterr().out
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "romberg.cli",
                "analyze",
                "--input",
                str(out),
                "--sex",
                "male",
                "--view",
                "front",
                "--report",
                str(tmp_path / "report.json"),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode in (0, 2, 3), proc.stderr
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["frames"]["used"] == 86


def test_mediapipe_backend_requires_dependency():
    pytest.importorskip("mediapipe")
    backend = make_backend("mediapipe")
    try:
        assert backend.name.startswith("mediapipe-pose-")
    finally:
        backend.close()


def test_mediapipe_missing_message():
    try:
        import mediapipe  # noqa: F401

        pytest.skip("mediapipe installed; error path not reachable")
    except ImportError:
        pass
    with pytest.raises(RuntimeError, match="mediapipe"):
        make_backend("mediapipe")
