"""motionforge: scene-space motion designs to screen-space conditioning
signals (point tracks, calibrated box sequences, DCT trajectory codes,
color-coded box rasters), with chunked re-anchoring and pose-recovery
verification."""

from .types import (BBox2D, BoxSignal, CameraKeyframe, CameraPath, Extrinsics,
                    Intrinsics, KeyframeList, LocalTrackSpec, MotionDesign,
                    ObjectSpec, PatternMix, PatternSpec, PointTrack,
                    SceneBoxTrack, SceneContext, ScreenBoxTrack, SignalBundle,
                    TrajCoeffs, default_intrinsics, identity_extrinsics)

__version__ = "0.1.0"

__all__ = [
    "BBox2D", "BoxSignal", "CameraKeyframe", "CameraPath", "Extrinsics",
    "Intrinsics", "KeyframeList", "LocalTrackSpec", "MotionDesign",
    "ObjectSpec", "PatternMix", "PatternSpec", "PointTrack", "SceneBoxTrack",
    "SceneContext", "ScreenBoxTrack", "SignalBundle", "TrajCoeffs",
    "default_intrinsics", "identity_extrinsics", "__version__",
]
