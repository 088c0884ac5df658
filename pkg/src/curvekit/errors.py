"""Exception hierarchy shared by all modules."""


class CurvekitError(Exception):
    """Base class for toolkit errors."""


class TriangulationError(CurvekitError):
    pass


class ChartMismatch(CurvekitError):
    pass


class NotACurve(CurvekitError):
    """Matching conditions cannot be repaired."""


class Peripheral(CurvekitError):
    """Empty or puncture-parallel input."""


class Disconnected(CurvekitError):
    """More than one component; use MultiCurve."""


class NoOverlap(CurvekitError):
    pass


class EmptyProjection(CurvekitError):
    def __init__(self, side, message=""):
        super().__init__(message or f"empty projection on the {side} side")
        self.side = side


class NotOverlapping(CurvekitError):
    def __init__(self, side, message=""):
        super().__init__(message or f"subsurfaces do not overlap ({side} side)")
        self.side = side


class ScheduleInvalid(CurvekitError):
    pass


class Exhausted(CurvekitError):
    pass


class WitnessInvalid(CurvekitError):
    pass


class ShorteningFailed(CurvekitError):
    """The flip search could not bring a curve to an annulus core."""
