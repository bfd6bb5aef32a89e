"""Balance analysis from pose-landmark streams: filtering, center-of-mass
estimation, relative weight distribution, and an objective balance verdict,
plus a synthetic sway simulator and an evaluation harness."""

from .biomech import ComSample, SegmentMassTable, compute_com, com_series, mass_table
from .diagnosis import Diagnosis, Thresholds, diagnose
from .errors import PipelineError
from .filtering import (
    FilterConfig,
    KalmanState,
    ema_series,
    ema_step,
    filter_joint_series,
    kf_predict,
    kf_update,
)
from .landmarks import (
    Frame,
    Landmark,
    LandmarkId,
    LandmarkStream,
    SubjectMeta,
    parse_stream,
    write_stream,
)
from .rwd import RwdSample, ap_rwd, lateral_rwd, rwd_series
from .simulate import AxisSway, GroundTruth, SwayScenario, generate, inject_noise
from .evaluation import EvalSummary, ScaleReading, mae, scale_wd, summarize

__version__ = "0.1.0"

__all__ = [
    "AxisSway",
    "ComSample",
    "Diagnosis",
    "EvalSummary",
    "FilterConfig",
    "Frame",
    "GroundTruth",
    "KalmanState",
    "Landmark",
    "LandmarkId",
    "LandmarkStream",
    "PipelineError",
    "RwdSample",
    "ScaleReading",
    "SegmentMassTable",
    "SubjectMeta",
    "SwayScenario",
    "Thresholds",
    "ap_rwd",
    "compute_com",
    "com_series",
    "diagnose",
    "ema_series",
    "ema_step",
    "filter_joint_series",
    "generate",
    "inject_noise",
    "kf_predict",
    "kf_update",
    "lateral_rwd",
    "mae",
    "mass_table",
    "parse_stream",
    "rwd_series",
    "scale_wd",
    "summarize",
    "write_stream",
]
