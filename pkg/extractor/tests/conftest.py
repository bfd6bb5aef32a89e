from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"
VIDEO = DATA / "mannequin.mp4"


@pytest.fixture(scope="session")
def test_video() -> Path:
    if not VIDEO.exists():
        import make_test_video

        VIDEO.parent.mkdir(parents=True, exist_ok=True)
        make_test_video.render(VIDEO)
    return VIDEO


@pytest.fixture(scope="session")
def default_extraction(test_video, tmp_path_factory):
    """One defaults-run shared by every test that only inspects its output
    (the heavy background blur makes extraction expensive)."""
    from pose_extract.extract import ExtractionConfig, extract

    out = tmp_path_factory.mktemp("extract") / "stream.jsonl"
    summary = extract(ExtractionConfig(video=test_video, out=out, backend="marker"))
    return out, summary
