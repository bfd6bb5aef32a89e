"""Exception types raised across the analysis pipeline."""


class PipelineError(Exception):
    """Base class for every error this package raises deliberately."""


class StreamFormatError(PipelineError):
    """Wire-format violation; carries the 1-based line number of the offending record."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class MalformedLine(StreamFormatError):
    """Record could not be parsed or failed field validation."""


class BadLandmarkCount(StreamFormatError):
    """Record does not contain exactly 33 landmarks."""


class NonMonotoneTime(StreamFormatError):
    """Frame timestamps are not strictly increasing."""


class EmptyStream(PipelineError):
    """Input contained zero frame records."""


class MissingMeta(PipelineError):
    """Subject sex/view unresolved; supply a ``#meta`` header or CLI flags."""


class NonFiniteState(PipelineError):
    """Kalman state or covariance left the finite domain."""


class SingularInnovation(PipelineError):
    """Kalman innovation covariance is numerically singular."""


class DegenerateStance(PipelineError):
    """Support points coincide; lateral torque balance is undefined."""


class DegenerateLean(PipelineError):
    """Center of mass is not above the ankles; lean angle is undefined."""


class NoUsableFrames(PipelineError):
    """Every frame of the series was skipped as degenerate."""


class InfeasibleScenario(PipelineError):
    """Requested sway cannot be produced by a leaning body over this stance."""


class ZeroTotalWeight(PipelineError):
    """Scale readings sum to zero; weight ratios are undefined."""


class LengthMismatch(PipelineError):
    """Paired sequences differ in length."""


class EmptyManifest(PipelineError):
    """Evaluation manifest lists no trials."""
