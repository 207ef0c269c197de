"""Exception hierarchy shared by all motionforge modules."""


class MotionForgeError(Exception):
    """Base class for all library errors."""


class SchemaError(MotionForgeError):
    """Design document is structurally malformed (missing or mistyped field).

    Carries the JSON path of the offending field so CLI/service diagnostics
    can point at it.
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class ValidationError(MotionForgeError):
    """A domain invariant is violated (well-formed input, bad values)."""


class FormatError(MotionForgeError):
    """Unreadable or unsupported file format."""


class NonPositiveDepthError(FormatError):
    """Depth raster contains a value <= 0 after scaling."""


class DomainError(MotionForgeError):
    """Numeric argument outside the operation's domain."""


class NoStaticRegionError(MotionForgeError):
    """Moving mask covers the entire canvas; no static pixels to sample."""


class DimensionMismatchError(ValidationError):
    """Rasters or designs disagree on canvas dimensions."""


class EmptyMaskError(MotionForgeError):
    """No pixels available to average a box depth over."""


class BehindCameraError(MotionForgeError):
    """A box center crossed behind the camera; box signals cannot represent it."""


class OutsideParentError(ValidationError):
    """Local track starts outside its parent object's frame-0 box."""


class DegenerateConfigurationError(MotionForgeError):
    """Pose recovery system is rank deficient (too few or degenerate points)."""


class LengthMismatchError(MotionForgeError):
    """Paired sequences have different lengths."""
