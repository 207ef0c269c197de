"""Local object motion: scene-space polylines to screen-space tracks through
the hierarchical camera / object-global decomposition.

A local track either rides its parent object's screen box (keeping the
relative position it had in the parent's frame-0 box) or, without a parent,
warps through the camera path alone at the constant depth of its starting
pixel.
"""
from __future__ import annotations

import numpy as np

from .errors import OutsideParentError, ValidationError
from .types import (CameraPath, LocalTrackSpec, PointTrack, SceneContext,
                    ScreenBoxTrack)
from .warp import bilinear_depth, is_identity_view, project, unproject


def densify_local(spec: LocalTrackSpec, L):
    """Piecewise-linear positions per frame from the timed polyline.

    Exact at the polyline vertices; if the last vertex sits before frame
    L-1 the final position is held.
    """
    frames = np.array([f for f, _ in spec.samples], dtype=np.float64)
    points = np.array([p for _, p in spec.samples], dtype=np.float64)
    if frames[-1] > L - 1:
        raise ValidationError("local track sample frame beyond the design length")
    grid = np.arange(L, dtype=np.float64)
    x = np.interp(grid, frames, points[:, 0])
    y = np.interp(grid, frames, points[:, 1])
    return np.stack([x, y], axis=-1)


def translate_local(spec: LocalTrackSpec, dense, parent, path: CameraPath,
                    ctx: SceneContext) -> PointTrack:
    """Translate a densified local polyline into a screen-space track.

    parent: None, or (scene_box0, ScreenBoxTrack) for the owning object,
    where scene_box0 is the parent's frame-0 box row (cx, cy, w, h). With a
    parent the point keeps its relative coordinates against the frame-0 box
    and rides the screen box, which already embodies camera and global
    motion. Without one, the point moves at the constant depth of its
    starting position through the camera transform alone.
    """
    dense = np.asarray(dense, dtype=np.float64)
    L = dense.shape[0]
    if L != len(path):
        raise ValidationError("densified track and camera path lengths differ")

    if parent is not None:
        box0, screen = parent
        box0 = np.asarray(box0, dtype=np.float64)
        if not (abs(dense[0, 0] - box0[0]) <= box0[2] / 2.0
                and abs(dense[0, 1] - box0[1]) <= box0[3] / 2.0):
            raise OutsideParentError(
                "local track starts outside its parent's frame-0 box")
        if not isinstance(screen, ScreenBoxTrack) or len(screen) != L:
            raise ValidationError("parent screen track does not match the design length")
        rho = (dense - box0[:2]) / box0[2:4]
        positions = screen.boxes[:, :2] + rho * screen.boxes[:, 2:4]
        visible = ((screen.z > 0)
                   & (positions[:, 0] >= 0) & (positions[:, 0] < ctx.width)
                   & (positions[:, 1] >= 0) & (positions[:, 1] < ctx.height))
        return PointTrack(positions, visible)

    depth = bilinear_depth(ctx, dense[0])
    positions = np.empty((L, 2))
    visible = np.empty(L, dtype=bool)
    in_canvas = ((dense[:, 0] >= 0) & (dense[:, 0] < ctx.width)
                 & (dense[:, 1] >= 0) & (dense[:, 1] < ctx.height))
    for l in range(L):
        extr, intr = path.frames[l]
        if is_identity_view(extr, intr, ctx.intrinsics0):
            positions[l] = dense[l]
            visible[l] = in_canvas[l]
            continue
        world = unproject(dense[l], depth, ctx.intrinsics0)
        pix, _, vis = project(world, extr, intr)
        positions[l] = pix
        visible[l] = vis
    return PointTrack(positions, visible)
