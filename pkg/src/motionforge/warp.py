"""Pinhole projection, static-point sampling and depth-based track synthesis.

Camera movement is conveyed to the video model as 2D tracks of static scene
points: sample background pixels, lift them with the depth map, and reproject
through every frame of the camera path.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import (DimensionMismatchError, DomainError, NoStaticRegionError,
                     ValidationError)
from .types import (CameraPath, Extrinsics, Intrinsics, PointTrack,
                    SceneContext, Z_MIN, worker_count)


def unproject(pixel, z, intrinsics: Intrinsics):
    """Lift pixel(s) at depth z to 3D camera-frame points.

    pixel: (2,) or (n, 2); z: scalar or (n,). Returns (3,) or (n, 3).
    """
    pix = np.asarray(pixel, dtype=np.float64)
    depth = np.asarray(z, dtype=np.float64)
    if np.any(depth <= 0):
        raise DomainError("depth must be positive to unproject")
    x = depth * (pix[..., 0] - intrinsics.cx) / intrinsics.fx
    y = depth * (pix[..., 1] - intrinsics.cy) / intrinsics.fy
    return np.stack([x, y, np.broadcast_to(depth, x.shape)], axis=-1)


def project(points, extrinsics: Extrinsics, intrinsics: Intrinsics):
    """Project world point(s) to (pixels, z_cam, visible).

    Points behind the camera (z <= Z_MIN) are projected on a ray clamped at
    Z_MIN so positions stay finite; they are flagged invisible rather than
    raising, since long orbits legitimately push points behind the camera.
    """
    pts = np.asarray(points, dtype=np.float64)
    single = pts.ndim == 1
    cam = extrinsics.apply(np.atleast_2d(pts))
    z = cam[:, 2]
    safe_z = np.maximum(z, Z_MIN)
    u = intrinsics.cx + intrinsics.fx * cam[:, 0] / safe_z
    v = intrinsics.cy + intrinsics.fy * cam[:, 1] / safe_z
    pix = np.stack([u, v], axis=-1)
    visible = ((z > Z_MIN)
               & (u >= 0) & (u < intrinsics.width)
               & (v >= 0) & (v < intrinsics.height))
    if single:
        return pix[0], z[0], bool(visible[0])
    return pix, z, visible


def bilinear_depth(ctx: SceneContext, pixel):
    """Depth at real-valued pixel coordinates, bilinear, edge-clamped."""
    pix = np.asarray(pixel, dtype=np.float64)
    single = pix.ndim == 1
    pix = np.atleast_2d(pix)
    u = np.clip(pix[:, 0], 0.0, ctx.width - 1.0)
    v = np.clip(pix[:, 1], 0.0, ctx.height - 1.0)
    u0 = np.floor(u).astype(np.int64)
    v0 = np.floor(v).astype(np.int64)
    u1 = np.minimum(u0 + 1, ctx.width - 1)
    v1 = np.minimum(v0 + 1, ctx.height - 1)
    fu = u - u0
    fv = v - v0
    d = ctx.depth
    out = (d[v0, u0] * (1 - fu) * (1 - fv) + d[v0, u1] * fu * (1 - fv)
           + d[v1, u0] * (1 - fu) * fv + d[v1, u1] * fu * fv)
    return out[0] if single else out


def sample_static_points(ctx: SceneContext, n, seed=0):
    """Draw up to n distinct static-background pixel centers, seeded.

    Pixels with moving_mask == 0 are eligible. Returns an (m, 2) float array
    of (u, v) with m = min(n, available); deterministic for fixed inputs.
    """
    if n < 0:
        raise ValidationError("sample count must be non-negative")
    if n == 0:
        return np.zeros((0, 2))
    flat = np.flatnonzero(ctx.moving_mask.reshape(-1) == 0)
    if flat.size == 0:
        raise NoStaticRegionError("moving mask covers the whole canvas")
    rng = np.random.default_rng(seed)
    take = min(n, flat.size)
    chosen = rng.choice(flat, size=take, replace=False)
    v, u = np.divmod(chosen, ctx.width)
    return np.stack([u, v], axis=-1).astype(np.float64)


def is_identity_view(extrinsics: Extrinsics, intrinsics: Intrinsics,
                     intrinsics0: Intrinsics):
    """True when the frame's camera transform is bit-level the reference view."""
    return (np.array_equal(extrinsics.rotation, np.eye(3))
            and not extrinsics.translation.any()
            and intrinsics == intrinsics0)


def synthesize_camera_tracks(ctx: SceneContext, path: CameraPath, n=100, seed=0):
    """Warp sampled static points through the camera path into point tracks.

    Each track starts bit-exactly at its sampled pixel (frame 0 is the
    identity view) and carries per-frame visibility from the projection.
    Identity frames map pixels to themselves exactly.
    """
    if len(path) < 2:
        raise ValidationError("camera path needs at least two frames")
    pixels = sample_static_points(ctx, n, seed)
    if pixels.shape[0] == 0:
        return []
    depths = bilinear_depth(ctx, pixels)
    world = unproject(pixels, depths, ctx.intrinsics0)

    L = len(path)
    in_canvas = ((pixels[:, 0] >= 0) & (pixels[:, 0] < ctx.width)
                 & (pixels[:, 1] >= 0) & (pixels[:, 1] < ctx.height))
    positions = np.empty((L, pixels.shape[0], 2))
    visible = np.empty((L, pixels.shape[0]), dtype=bool)
    for l in range(L):
        if is_identity_view(path.extrinsics(l), path.intrinsics(l), ctx.intrinsics0):
            positions[l] = pixels
            visible[l] = in_canvas
        else:
            pix, _, vis = project(world, path.extrinsics(l), path.intrinsics(l))
            positions[l] = pix
            visible[l] = vis

    return [PointTrack(positions[:, i], visible[:, i]) for i in range(pixels.shape[0])]


def _splat_frame(world, colors, extr, intr, height, width):
    pix, z, _ = project(world, extr, intr)
    cols = np.rint(pix[:, 0]).astype(np.int64)
    rows = np.rint(pix[:, 1]).astype(np.int64)
    keep = (z > Z_MIN) & (cols >= 0) & (cols < width) & (rows >= 0) & (rows < height)
    cols, rows, zk, ck = cols[keep], rows[keep], z[keep], colors[keep]
    # paint far-to-near; stable sort keeps ties deterministic (last in scan order wins)
    order = np.argsort(-zk, kind="stable")
    frame = np.zeros((height, width, 3), dtype=np.uint8)
    frame[rows[order], cols[order]] = ck[order]
    return frame


def render_preview(image, ctx: SceneContext, path: CameraPath):
    """Forward point-splat of the input image through (depth, camera path).

    One-pixel splats with a nearest-wins z-buffer; unfilled pixels stay
    black. Returns an (L, H, W, 3) uint8 array.
    """
    img = np.asarray(image)
    if img.shape[:2] != (ctx.height, ctx.width):
        raise DimensionMismatchError(
            f"image {img.shape[:2]} does not match context {(ctx.height, ctx.width)}")
    if img.ndim != 3 or img.shape[2] != 3:
        raise DimensionMismatchError("preview image must be H x W x 3")

    vv, uu = np.mgrid[0:ctx.height, 0:ctx.width]
    pixels = np.stack([uu.reshape(-1), vv.reshape(-1)], axis=-1).astype(np.float64)
    world = unproject(pixels, ctx.depth.reshape(-1), ctx.intrinsics0)
    colors = img.reshape(-1, 3)

    def render(l):
        return _splat_frame(world, colors, path.extrinsics(l), path.intrinsics(l),
                            ctx.height, ctx.width)

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        frames = list(pool.map(render, range(len(path))))
    return np.stack(frames)
