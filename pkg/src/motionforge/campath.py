"""Camera path synthesis from base motion patterns or pose keyframes.

Pattern sign conventions (y points down, z into the scene):
  trucking +right, pedestal +up, dolly +in, pan +right, tilt +up,
  roll +clockwise on screen, zoom +in (focal grows), orbit +right around the
  pivot (0, 0, radius), circle +clockwise translation with fixed orientation.
"""
from __future__ import annotations

import numpy as np
from scipy.spatial.transform import Rotation, Slerp

from .errors import DomainError, ValidationError
from .spline import catmull_rom
from .types import (CameraPath, Extrinsics, Intrinsics, PatternSpec,
                    identity_extrinsics)


def rot_x(theta):
    """Tilt-up rotation: a point ahead moves down on screen for theta > 0."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])


def rot_y(theta):
    """Pan-right rotation: a point ahead moves left on screen for theta > 0."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]])


def rot_z(theta):
    """Roll: screen content rotates clockwise for theta > 0."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _center_translation(center):
    """Extrinsics for a camera whose center moved to `center` (R = I)."""
    return Extrinsics(np.eye(3), -np.asarray(center, dtype=np.float64))


def pattern_pose(spec: PatternSpec, s: float, intrinsics0: Intrinsics):
    """Pose of a single base pattern at normalized progress s in [0, 1]."""
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"progress {s} outside [0, 1]")
    kind = spec.pattern
    amount = spec.magnitude * s

    if kind == "static":
        return identity_extrinsics(), intrinsics0
    if kind == "trucking":
        return _center_translation((amount, 0.0, 0.0)), intrinsics0
    if kind == "pedestal":
        return _center_translation((0.0, -amount, 0.0)), intrinsics0
    if kind == "dolly":
        return _center_translation((0.0, 0.0, amount)), intrinsics0
    if kind == "pan":
        return Extrinsics(rot_y(amount), np.zeros(3)), intrinsics0
    if kind == "tilt":
        return Extrinsics(rot_x(amount), np.zeros(3)), intrinsics0
    if kind == "roll":
        return Extrinsics(rot_z(amount), np.zeros(3)), intrinsics0
    if kind == "zoom":
        factor = 1.0 + amount
        if factor * intrinsics0.fx <= 0 or factor * intrinsics0.fy <= 0:
            raise DomainError(f"zoom factor {factor} makes the focal length non-positive")
        return identity_extrinsics(), intrinsics0.scaled_focal(factor)
    if kind == "orbit":
        if spec.radius is None or spec.radius <= 0:
            raise DomainError("orbit requires a positive radius")
        pivot = np.array([0.0, 0.0, spec.radius])
        r = rot_y(amount)
        # X_cam = R (X - P) + P keeps the pivot fixed in camera coordinates
        return Extrinsics(r, pivot - r @ pivot), intrinsics0
    if kind == "circle":
        if spec.radius is None or spec.radius <= 0:
            raise DomainError("circle requires a positive radius")
        c = spec.radius * np.array([np.sin(amount), np.cos(amount) - 1.0, 0.0])
        return _center_translation(c), intrinsics0
    raise DomainError(f"unknown pattern {kind!r}")


def mix_patterns(specs, L, intrinsics0: Intrinsics) -> CameraPath:
    """Compose base patterns into an L-frame path at constant speed.

    Per frame, with s = l / (L - 1):
      E = E_orbit(s) o (pan . tilt . roll)(s) o E_translations(s)
    where translations sum camera-center displacements of trucking, pedestal,
    dolly and circle, orbits compose in list order, and zoom focal factors
    multiply. Frame 0 is exactly the identity.
    """
    if L < 2:
        raise ValidationError("pattern mixing needs at least two frames")
    specs = [s if isinstance(s, PatternSpec) else PatternSpec(*s) for s in specs]

    frames = []
    for l in range(L):
        s = l / (L - 1)
        center = np.zeros(3)
        rot = np.eye(3)
        orbit = identity_extrinsics()
        focal = 1.0
        for group in ("pan", "tilt", "roll"):
            for spec in specs:
                if spec.pattern == group:
                    pose, _ = pattern_pose(spec, s, intrinsics0)
                    rot = rot @ pose.rotation
        for spec in specs:
            if spec.pattern in ("trucking", "pedestal", "dolly", "circle"):
                pose, _ = pattern_pose(spec, s, intrinsics0)
                center -= pose.translation  # t = -C for pure translations
            elif spec.pattern == "orbit":
                pose, _ = pattern_pose(spec, s, intrinsics0)
                orbit = orbit.compose(pose)
            elif spec.pattern == "zoom":
                _, k = pattern_pose(spec, s, intrinsics0)
                focal *= k.fx / intrinsics0.fx
        if focal * intrinsics0.fx <= 0:
            raise DomainError("combined zoom factor makes the focal length non-positive")
        pose = orbit.compose(Extrinsics(rot, np.zeros(3))).compose(_center_translation(center))
        if l == 0:
            pose = identity_extrinsics()  # s = 0 composes to identity; pin it bit-exactly
        frames.append((pose, intrinsics0.scaled_focal(focal)))
    return CameraPath(tuple(frames))


def keyframe_path(keys, L, intrinsics0: Intrinsics) -> CameraPath:
    """Interpolate (frame, Extrinsics, focal_scale) keys into an L-frame path.

    Camera centers follow a centripetal Catmull-Rom spline with clamped end
    tangents, rotations follow piecewise shortest-arc slerp, focal scale is
    linear in the frame index. The path passes through every key exactly.
    """
    keys = list(keys)
    if len(keys) < 2:
        raise ValidationError("need at least two camera keyframes")
    key_frames = np.array([k[0] for k in keys], dtype=np.int64)
    poses = [k[1] for k in keys]
    focals = np.array([k[2] for k in keys], dtype=np.float64)
    if np.any(np.diff(key_frames) <= 0):
        raise ValidationError("camera keyframes not increasing")
    if key_frames[0] != 0 or key_frames[-1] != L - 1:
        raise ValidationError("camera keyframes must span frames 0 to L-1")
    if not poses[0].is_identity():
        raise ValidationError("camera keyframe 0 must be the identity pose")
    if focals[0] != 1.0:
        raise ValidationError("camera keyframe 0 must have focal scale 1")
    if np.any(focals <= 0):
        raise ValidationError("focal scales must be positive")

    centers = np.stack([p.camera_center() for p in poses])
    grid = np.arange(L, dtype=np.float64)
    dense_centers = catmull_rom(centers, key_frames.astype(np.float64), grid,
                                knot_mode="points")
    slerp = Slerp(key_frames.astype(np.float64),
                  Rotation.from_matrix(np.stack([p.rotation for p in poses])))
    dense_rot = slerp(grid).as_matrix()
    dense_focal = np.interp(grid, key_frames, focals)

    key_lookup = {int(f): i for i, f in enumerate(key_frames)}
    frames = []
    for l in range(L):
        if l in key_lookup:
            pose = poses[key_lookup[l]]  # pass through keys verbatim
            fs = focals[key_lookup[l]]
        else:
            r = dense_rot[l]
            pose = Extrinsics(r, -r @ dense_centers[l])
            fs = dense_focal[l]
        frames.append((pose, intrinsics0.scaled_focal(fs)))
    return CameraPath(tuple(frames))
