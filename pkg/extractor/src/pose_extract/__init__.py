"""Video-to-landmark-stream adapter for the balance analysis toolkit."""

from .backends import BACKENDS, MarkerBackend, MediaPipeBackend, make_backend
from .extract import ExtractionConfig, ExtractionError, ExtractionSummary, extract

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "ExtractionConfig",
    "ExtractionError",
    "ExtractionSummary",
    "MarkerBackend",
    "MediaPipeBackend",
    "extract",
    "make_backend",
]
