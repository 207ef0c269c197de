"""Core domain types and the global coordinate convention.

Convention (OpenCV-style, used everywhere in this package):
  - pixel/camera axes: +x right, +y down, +z into the scene
  - world frame == frame-0 camera frame, so the first extrinsic is [I|0]
  - extrinsics map world to camera: X_cam = R @ X_world + t
  - projection: u = cx + fx * X/Z, v = cy + fy * Y/Z

All types are immutable after construction (frozen dataclasses; numpy
payloads are marked read-only) and safe to share across threads.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import ValidationError

ORTHO_TOL = 1e-9
Z_MIN = 1e-6

PATTERN_NAMES = (
    "trucking", "pedestal", "dolly", "pan", "tilt", "roll",
    "zoom", "orbit", "circle", "static",
)


def _frozen_array(value, dtype, shape=None):
    # always copy so freezing never mutates caller-owned arrays
    arr = np.array(value, dtype=dtype, order="C")
    if shape is not None and arr.shape != shape:
        raise ValidationError(f"expected array of shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


def worker_count():
    """Parallelism cap from MOTIONFORGE_THREADS (0 or unset = auto)."""
    raw = os.environ.get("MOTIONFORGE_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, n)


@dataclass(frozen=True)
class Intrinsics:
    """Pinhole projection parameters in pixels."""

    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.fx > 0 and self.fy > 0):
            raise ValidationError(f"focal lengths must be positive, got fx={self.fx}, fy={self.fy}")
        if not (0 <= self.cx <= self.width and 0 <= self.cy <= self.height):
            raise ValidationError("principal point outside the canvas")

    def scaled_focal(self, factor):
        """New intrinsics with both focal lengths multiplied by factor."""
        return Intrinsics(self.fx * factor, self.fy * factor, self.cx, self.cy,
                          self.width, self.height)

    def matrix(self):
        return np.array([[self.fx, 0.0, self.cx],
                         [0.0, self.fy, self.cy],
                         [0.0, 0.0, 1.0]])


def default_intrinsics(width, height):
    """Deterministic fallback intrinsics: vertical FOV 50 deg, centered."""
    fy = 0.5 * height / math.tan(math.radians(25.0))
    return Intrinsics(fx=fy, fy=fy, cx=width / 2.0, cy=height / 2.0,
                      width=width, height=height)


@dataclass(frozen=True)
class Extrinsics:
    """World-to-camera rigid transform: X_cam = rotation @ X_world + translation."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rotation", _frozen_array(self.rotation, np.float64, (3, 3)))
        object.__setattr__(self, "translation", _frozen_array(self.translation, np.float64, (3,)))
        err = np.abs(self.rotation.T @ self.rotation - np.eye(3)).max()
        if err > ORTHO_TOL:
            raise ValidationError(f"rotation not orthonormal (max deviation {err:.3e})")
        det = np.linalg.det(self.rotation)
        if abs(det - 1.0) > ORTHO_TOL:
            raise ValidationError(f"rotation determinant {det} != +1")

    def __eq__(self, other):
        if not isinstance(other, Extrinsics):
            return NotImplemented
        return (np.array_equal(self.rotation, other.rotation)
                and np.array_equal(self.translation, other.translation))

    def apply(self, points):
        """Transform world points (..., 3) into camera coordinates."""
        pts = np.asarray(points, dtype=np.float64)
        return pts @ self.rotation.T + self.translation

    def compose(self, other):
        """self after other: (self o other)(X) = self(other(X))."""
        return Extrinsics(self.rotation @ other.rotation,
                          self.rotation @ other.translation + self.translation)

    def inverse(self):
        rt = self.rotation.T
        return Extrinsics(rt, -rt @ self.translation)

    def camera_center(self):
        """Camera center in world coordinates (solves R C + t = 0)."""
        return -self.rotation.T @ self.translation

    def is_identity(self, tol=ORTHO_TOL):
        return (np.abs(self.rotation - np.eye(3)).max() <= tol
                and np.abs(self.translation).max() <= tol)


def identity_extrinsics():
    return Extrinsics(np.eye(3), np.zeros(3))


@dataclass(frozen=True)
class CameraPath:
    """Per-frame (Extrinsics, Intrinsics); frame 0 is the reference view."""

    frames: tuple

    def __post_init__(self):
        frames = tuple(self.frames)
        object.__setattr__(self, "frames", frames)
        if len(frames) < 1:
            raise ValidationError("camera path needs at least one frame")
        e0, k0 = frames[0]
        if not e0.is_identity():
            raise ValidationError("frame 0 must be the identity pose (input image defines the world frame)")
        for _, k in frames:
            if (k.width, k.height) != (k0.width, k0.height):
                raise ValidationError("all frames must share canvas dimensions")

    def __len__(self):
        return len(self.frames)

    def extrinsics(self, l):
        return self.frames[l][0]

    def intrinsics(self, l):
        return self.frames[l][1]


@dataclass(frozen=True)
class BBox2D:
    """Axis-aligned box by center and size, in pixels."""

    cx: float
    cy: float
    w: float
    h: float

    def __post_init__(self):
        if not (self.w > 0 and self.h > 0):
            raise ValidationError(f"box size must be positive, got w={self.w}, h={self.h}")

    def contains(self, x, y):
        return (abs(x - self.cx) <= self.w / 2.0) and (abs(y - self.cy) <= self.h / 2.0)


@dataclass(frozen=True)
class SceneContext:
    """Input image geometry: depth raster, object label masks, reference intrinsics."""

    width: int
    height: int
    depth: np.ndarray
    moving_mask: np.ndarray
    intrinsics0: Intrinsics

    def __post_init__(self):
        object.__setattr__(self, "depth",
                           _frozen_array(self.depth, np.float64, (self.height, self.width)))
        object.__setattr__(self, "moving_mask",
                           _frozen_array(self.moving_mask, np.int32, (self.height, self.width)))
        if not np.all(np.isfinite(self.depth)):
            raise ValidationError("depth raster contains non-finite values")
        if not np.all(self.depth > 0):
            raise ValidationError("depth raster contains non-positive values")
        if self.moving_mask.min() < 0:
            raise ValidationError("mask labels must be non-negative")
        if (self.intrinsics0.width, self.intrinsics0.height) != (self.width, self.height):
            raise ValidationError("intrinsics canvas does not match context dimensions")


@dataclass(frozen=True)
class PatternSpec:
    """One base camera motion pattern with signed magnitude.

    Magnitude units: scene units for trucking/pedestal/dolly, radians for
    pan/tilt/roll and for the angle swept by orbit/circle, fractional focal
    change for zoom. Radius (scene units) is required exactly for orbit and
    circle.
    """

    pattern: str
    magnitude: float
    radius: Optional[float] = None

    def __post_init__(self):
        if self.pattern not in PATTERN_NAMES:
            raise ValidationError(f"unknown pattern {self.pattern!r}")
        needs_radius = self.pattern in ("orbit", "circle")
        if needs_radius and self.radius is None:
            raise ValidationError(f"{self.pattern} requires a radius")
        if not needs_radius and self.radius is not None:
            raise ValidationError(f"{self.pattern} does not take a radius")
        if self.pattern == "static":
            if self.magnitude != 0:
                raise ValidationError("static pattern must have magnitude 0")
        elif self.magnitude == 0:
            raise ValidationError(f"{self.pattern} magnitude must be nonzero (use static)")


@dataclass(frozen=True)
class CameraKeyframe:
    frame: int
    pose: Extrinsics
    focal_scale: float = 1.0


@dataclass(frozen=True)
class PatternMix:
    patterns: tuple  # of PatternSpec

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))


@dataclass(frozen=True)
class KeyframeList:
    keys: tuple  # of CameraKeyframe

    def __post_init__(self):
        object.__setattr__(self, "keys", tuple(self.keys))


DEPTH_MODES = ("mask_mean", "reference_point", "perspective")


@dataclass(frozen=True)
class ObjectSpec:
    """Scene-anchored bbox trajectory for one masked object.

    key_boxes are (frame, BBox2D) drawn on the frame-0 canvas; depth_mode
    selects how per-frame depths are assigned (see boxmotion.assign_depths).
    """

    object_id: int
    key_boxes: tuple  # of (frame, BBox2D)
    depth_mode: str = "mask_mean"
    reference_points: tuple = ()  # of (frame, (x, y)), for reference_point mode

    def __post_init__(self):
        object.__setattr__(self, "key_boxes", tuple(self.key_boxes))
        object.__setattr__(self, "reference_points", tuple(self.reference_points))
        if self.depth_mode not in DEPTH_MODES:
            raise ValidationError(f"unknown depth mode {self.depth_mode!r}")
        if len(self.key_boxes) < 2:
            raise ValidationError("object needs at least start and end key boxes")
        frames = [f for f, _ in self.key_boxes]
        if any(b <= a for a, b in zip(frames, frames[1:])):
            raise ValidationError("key frames not increasing")
        if self.depth_mode == "reference_point" and len(self.reference_points) < 1:
            raise ValidationError("reference_point mode needs at least one reference point")
        rframes = [f for f, _ in self.reference_points]
        if any(b <= a for a, b in zip(rframes, rframes[1:])):
            raise ValidationError("reference point frames not increasing")


@dataclass(frozen=True)
class LocalTrackSpec:
    """Timed polyline depicting in-place object motion, on the frame-0 canvas."""

    samples: tuple  # of (frame, (x, y))
    parent_object: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if len(self.samples) < 2:
            raise ValidationError("local track needs at least two samples")
        frames = [f for f, _ in self.samples]
        if frames[0] != 0:
            raise ValidationError("local track must start at frame 0")
        if any(b <= a for a, b in zip(frames, frames[1:])):
            raise ValidationError("local track sample frames not increasing")


@dataclass(frozen=True)
class MotionDesign:
    """A full scene-space motion intent, as parsed from a design document."""

    frame_count: int
    fps: int
    camera: Union[PatternMix, KeyframeList]
    objects: tuple = ()
    local_tracks: tuple = ()
    text_prompt: str = ""
    canvas_width: int = 640
    canvas_height: int = 352
    intrinsics: Optional[Intrinsics] = None

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "local_tracks", tuple(self.local_tracks))
        L = self.frame_count
        if L < 2:
            raise ValidationError("frame_count must be at least 2")
        if self.fps <= 0:
            raise ValidationError("fps must be positive")
        if isinstance(self.camera, KeyframeList):
            keys = self.camera.keys
            frames = [k.frame for k in keys]
            if any(b <= a for a, b in zip(frames, frames[1:])):
                raise ValidationError("camera keyframes not increasing")
            if not keys or frames[0] != 0 or frames[-1] != L - 1:
                raise ValidationError("camera keyframes must start at 0 and end at frame_count-1")
            if not keys[0].pose.is_identity():
                raise ValidationError("camera keyframe 0 must be the identity pose")
        ids = set()
        for obj in self.objects:
            if obj.object_id in ids:
                raise ValidationError(f"duplicate object id {obj.object_id}")
            ids.add(obj.object_id)
            frames = [f for f, _ in obj.key_boxes]
            if frames[0] != 0 or frames[-1] != L - 1:
                raise ValidationError("object key boxes must span frames 0 to frame_count-1")
            for f, box in obj.key_boxes:
                self._check_box_bounds(f, box)
            for f, _ in obj.reference_points:
                if not (0 <= f <= L - 1):
                    raise ValidationError(f"reference point frame {f} outside [0, {L - 1}]")
        for track in self.local_tracks:
            if track.samples[-1][0] > L - 1:
                raise ValidationError("local track sample frame beyond frame_count-1")
            if track.parent_object is not None:
                if track.parent_object not in ids:
                    raise ValidationError(f"local track parent {track.parent_object} is not a declared object")
                parent = next(o for o in self.objects if o.object_id == track.parent_object)
                box0 = parent.key_boxes[0][1]
                x0, y0 = track.samples[0][1]
                if not box0.contains(x0, y0):
                    raise ValidationError("local track must start inside its parent's frame-0 key box")

    def _check_box_bounds(self, frame, box):
        # exits/entries may overshoot the canvas by up to 50% on each side
        w, h = self.canvas_width, self.canvas_height
        if (box.cx - box.w / 2 < -0.5 * w or box.cx + box.w / 2 > 1.5 * w
                or box.cy - box.h / 2 < -0.5 * h or box.cy + box.h / 2 > 1.5 * h):
            raise ValidationError(f"key box at frame {frame} outside the expanded canvas bound")

    def intrinsics0(self):
        """Design intrinsics, or the deterministic default for the canvas."""
        if self.intrinsics is not None:
            return self.intrinsics
        return default_intrinsics(self.canvas_width, self.canvas_height)


@dataclass(frozen=True)
class PointTrack:
    """Screen-space positions over L frames with per-frame visibility."""

    positions: np.ndarray  # (L, 2) sub-pixel coordinates
    visible: np.ndarray  # (L,) bool

    def __post_init__(self):
        pos = _frozen_array(self.positions, np.float64)
        vis = _frozen_array(self.visible, bool)
        if pos.ndim != 2 or pos.shape[1] != 2 or vis.shape != (pos.shape[0],):
            raise ValidationError("track positions must be (L, 2) with (L,) visibility")
        if not np.all(np.isfinite(pos[vis])):
            raise ValidationError("visible positions must be finite")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "visible", vis)

    def __len__(self):
        return self.positions.shape[0]


@dataclass(frozen=True)
class TrajCoeffs:
    """K x 2 trajectory code: slot 0 is the frame-0 position, the rest are
    orthonormal DCT-II coefficients of the per-frame displacement sequence."""

    values: np.ndarray  # (K, 2)

    def __post_init__(self):
        vals = _frozen_array(self.values, np.float64)
        if vals.ndim != 2 or vals.shape[1] != 2 or vals.shape[0] < 1:
            raise ValidationError("coefficients must be (K, 2) with K >= 1")
        if not np.all(np.isfinite(vals[0])):
            raise ValidationError("slot 0 (start position) must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def k(self):
        return self.values.shape[0]

    @property
    def start(self):
        return self.values[0]


@dataclass(frozen=True)
class SceneBoxTrack:
    """Per-frame boxes on the frame-0 canvas with assigned scene depths."""

    boxes: np.ndarray  # (L, 4) columns cx, cy, w, h
    depth: np.ndarray  # (L,)

    def __post_init__(self):
        boxes = _frozen_array(self.boxes, np.float64)
        depth = _frozen_array(self.depth, np.float64)
        if boxes.ndim != 2 or boxes.shape[1] != 4 or depth.shape != (boxes.shape[0],):
            raise ValidationError("box track must be (L, 4) with (L,) depths")
        if not np.all(depth > 0):
            raise ValidationError("assigned box depths must be positive")
        object.__setattr__(self, "boxes", boxes)
        object.__setattr__(self, "depth", depth)

    def __len__(self):
        return self.boxes.shape[0]


@dataclass(frozen=True)
class ScreenBoxTrack:
    """Camera-calibrated screen-space boxes with post-transform depths."""

    boxes: np.ndarray  # (L, 4) columns cx, cy, w, h
    z: np.ndarray  # (L,) camera-frame depth after the camera transform

    def __post_init__(self):
        boxes = _frozen_array(self.boxes, np.float64)
        z = _frozen_array(self.z, np.float64)
        if boxes.ndim != 2 or boxes.shape[1] != 4 or z.shape != (boxes.shape[0],):
            raise ValidationError("box track must be (L, 4) with (L,) depths")
        object.__setattr__(self, "boxes", boxes)
        object.__setattr__(self, "z", z)

    def __len__(self):
        return self.boxes.shape[0]


@dataclass(frozen=True)
class BoxSignal:
    """Screen box track tagged with the object id it conditions."""

    object_id: int
    track: ScreenBoxTrack


@dataclass(frozen=True)
class SignalBundle:
    """The translated screen-space conditioning signals for one design."""

    camera_tracks: tuple  # of PointTrack
    screen_boxes: tuple  # of BoxSignal
    local_tracks: tuple  # of PointTrack
    traj_coeffs: tuple  # of TrajCoeffs, aligned with camera_tracks + local_tracks
    bbox_frames: np.ndarray  # (L, H, W, 3) uint8
    fps: int = 12
    warnings: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "camera_tracks", tuple(self.camera_tracks))
        object.__setattr__(self, "screen_boxes", tuple(self.screen_boxes))
        object.__setattr__(self, "local_tracks", tuple(self.local_tracks))
        object.__setattr__(self, "traj_coeffs", tuple(self.traj_coeffs))
        object.__setattr__(self, "warnings", tuple(self.warnings))
        frames = _frozen_array(self.bbox_frames, np.uint8)
        if frames.ndim != 4 or frames.shape[3] != 3:
            raise ValidationError("bbox frames must be (L, H, W, 3) bytes")
        object.__setattr__(self, "bbox_frames", frames)
        L = frames.shape[0]
        for t in self.camera_tracks + self.local_tracks:
            if len(t) != L:
                raise ValidationError("track length does not match frame count")
        for sig in self.screen_boxes:
            if len(sig.track) != L:
                raise ValidationError("box track length does not match frame count")
        tracks = self.camera_tracks + self.local_tracks
        if len(self.traj_coeffs) != len(tracks):
            raise ValidationError("one coefficient set per track is required")
        for coeffs, track in zip(self.traj_coeffs, tracks):
            if not np.array_equal(coeffs.start, track.positions[0]):
                raise ValidationError("coefficient slot 0 must equal the track's frame-0 position")

    @property
    def frame_count(self):
        return self.bbox_frames.shape[0]

    def all_tracks(self):
        return self.camera_tracks + self.local_tracks
