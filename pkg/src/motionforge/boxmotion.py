"""Scene-anchored bounding-box trajectories: interpolation, 2.5D depth
assignment and camera-calibrated projection to screen space.

A box drawn on the frame-0 canvas is lifted to 2.5D by assigning its center a
scene depth, then reprojected per frame so camera motion calibrates both its
location and its size.
"""
from __future__ import annotations

import numpy as np

from .errors import (BehindCameraError, DomainError, EmptyMaskError,
                     ValidationError)
from .spline import catmull_rom
from .types import (BBox2D, CameraPath, Intrinsics, ObjectSpec, SceneBoxTrack,
                    SceneContext, ScreenBoxTrack, Z_MIN)
from .warp import bilinear_depth, unproject


def interpolate_boxes(key_boxes, L):
    """Densify (frame, BBox2D) keys to an (L, 4) array of cx, cy, w, h.

    Each coordinate follows a centripetal Catmull-Rom spline over the
    keyframe times with clamped end tangents; key boxes are reproduced
    exactly and collinear equally spaced keys reproduce linear motion.
    """
    keys = list(key_boxes)
    if len(keys) < 2:
        raise ValidationError("need at least two key boxes")
    frames = np.array([f for f, _ in keys], dtype=np.float64)
    if np.any(np.diff(frames) <= 0):
        raise ValidationError("key frames not increasing")
    if frames[0] != 0 or frames[-1] != L - 1:
        raise ValidationError("key boxes must span frames 0 to L-1")
    values = np.array([[b.cx, b.cy, b.w, b.h] for _, b in keys], dtype=np.float64)
    grid = np.arange(L, dtype=np.float64)
    dense = catmull_rom(values, frames, grid, knot_mode="times")
    if np.any(dense[:, 2:] <= 0):
        raise ValidationError("interpolated box size collapsed to zero or below")
    return dense


def initial_box_depth(box0, object_id, ctx: SceneContext):
    """Mean scene depth of the object under its frame-0 box.

    Averages depth over pixels carrying the object's mask label inside the
    box; when the label is absent there, falls back to the whole box-0
    interior and reports a warning string alongside the value.
    """
    left = int(np.ceil(box0[0] - box0[2] / 2.0))
    right = int(np.ceil(box0[0] + box0[2] / 2.0))
    top = int(np.ceil(box0[1] - box0[3] / 2.0))
    bottom = int(np.ceil(box0[1] + box0[3] / 2.0))
    left, right = max(left, 0), min(right, ctx.width)
    top, bottom = max(top, 0), min(bottom, ctx.height)
    if left >= right or top >= bottom:
        raise EmptyMaskError(f"object {object_id}: frame-0 box has no pixels on canvas")
    region_depth = ctx.depth[top:bottom, left:right]
    region_mask = ctx.moving_mask[top:bottom, left:right]
    selected = region_depth[region_mask == object_id]
    if selected.size > 0:
        return float(selected.mean()), None
    warning = (f"object {object_id}: mask label absent inside the frame-0 box; "
               "using the box interior mean depth")
    return float(region_depth.mean()), warning


def assign_depths(boxes, spec: ObjectSpec, ctx: SceneContext):
    """Assign a scene depth to every interpolated box center.

    Frame 0 always takes the mask-mean depth. Later frames depend on the
    mode: mask_mean holds d_0; reference_point follows the depth under a
    reference pixel interpolated linearly between its given frames;
    perspective derives depth from box height by similar triangles,
    d_l = d_0 * h_0 / h_l. Returns (depths, warnings).
    """
    boxes = np.asarray(boxes, dtype=np.float64)
    L = boxes.shape[0]
    d0, warning = initial_box_depth(boxes[0], spec.object_id, ctx)
    warnings = [warning] if warning else []

    if spec.depth_mode == "mask_mean":
        depths = np.full(L, d0)
    elif spec.depth_mode == "perspective":
        heights = boxes[:, 3]
        if np.any(heights <= 0):
            raise DomainError("perspective mode needs positive box heights")
        depths = d0 * heights[0] / heights
    elif spec.depth_mode == "reference_point":
        ref_frames = np.array([f for f, _ in spec.reference_points], dtype=np.float64)
        ref_pix = np.array([p for _, p in spec.reference_points], dtype=np.float64)
        grid = np.arange(L, dtype=np.float64)
        u = np.interp(grid, ref_frames, ref_pix[:, 0])
        v = np.interp(grid, ref_frames, ref_pix[:, 1])
        depths = bilinear_depth(ctx, np.stack([u, v], axis=-1))
        depths = np.asarray(depths, dtype=np.float64).copy()
        depths[0] = d0  # the initial depth is always the mask mean
    else:
        raise ValidationError(f"unknown depth mode {spec.depth_mode!r}")
    return depths, warnings


def project_boxes(scene: SceneBoxTrack, path: CameraPath,
                  intrinsics0: Intrinsics) -> ScreenBoxTrack:
    """Camera-transform a 2.5D box track into screen space (Eq.-style
    b_screen = T_camera(b_scene)).

    Per frame: the center unprojects at its assigned depth, moves through the
    camera extrinsics and reprojects through that frame's intrinsics; the box
    size scales by the pinhole ratio (d / z_cam) * (f_l / f_0), width with fx
    and height with fy.
    """
    L = len(scene)
    if L != len(path):
        raise ValidationError("box track and camera path lengths differ")
    centers = unproject(scene.boxes[:, :2], scene.depth, intrinsics0)

    out = np.empty((L, 4))
    zs = np.empty(L)
    for l in range(L):
        extr, intr = path.frames[l]
        cam = extr.apply(centers[l])
        z = cam[2]
        if z <= Z_MIN:
            raise BehindCameraError(
                f"box center behind the camera at frame {l} (z = {z:.3g})")
        out[l, 0] = intr.cx + intr.fx * cam[0] / z
        out[l, 1] = intr.cy + intr.fy * cam[1] / z
        scale = scene.depth[l] / z
        out[l, 2] = scene.boxes[l, 2] * scale * (intr.fx / intrinsics0.fx)
        out[l, 3] = scene.boxes[l, 3] * scale * (intr.fy / intrinsics0.fy)
        zs[l] = z
    return ScreenBoxTrack(out, zs)


def boxes_as_bbox2d(boxes):
    """View an (L, 4) box array as BBox2D values (for key-box style access)."""
    return [BBox2D(*row) for row in np.asarray(boxes, dtype=np.float64)]
