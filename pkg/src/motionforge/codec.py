"""Trajectory and box signal encodings consumed by the video model.

Tracks become K-slot codes: slot 0 stores the frame-0 position verbatim
(grounding the start explicitly) and slots 1..K-1 hold orthonormal DCT-II
coefficients of the per-frame displacement sequence; decoding inverts the
DCT and integrates from slot 0, so the start point is exact by construction
and near-constant-velocity tracks (the dominant case for constant-speed
camera patterns) compress losslessly. Box tracks become per-frame RGB
rasters with one palette color per object.
"""
from __future__ import annotations

import colorsys
import math

import numpy as np

from .errors import DomainError
from .types import TrajCoeffs

DEFAULT_K = 10
GOLDEN_FRACTION = 0.618033988749895


def _dct_basis(n, rows):
    """First `rows` rows of the orthonormal DCT-II basis on n samples."""
    l = np.arange(n)
    k = np.arange(rows)
    basis = math.sqrt(2.0 / n) * np.cos(np.pi * k[:, None] * (2 * l[None, :] + 1) / (2 * n))
    if rows > 0:
        basis[0] *= 1.0 / math.sqrt(2.0)
    return basis


def dct_encode(track, k=DEFAULT_K) -> TrajCoeffs:
    """Compress an (L, 2) position track into a (K, 2) trajectory code."""
    positions = np.asarray(track, dtype=np.float64)
    L = positions.shape[0]
    if L < 2:
        raise DomainError("track must have at least two frames")
    if k < 1 or k > L:
        raise DomainError(f"coefficient count {k} outside [1, {L}]")
    values = np.zeros((k, 2))
    values[0] = positions[0]
    if k > 1:
        steps = np.diff(positions, axis=0)
        values[1:] = _dct_basis(L - 1, k - 1) @ steps
    return TrajCoeffs(values)


def dct_decode(coeffs: TrajCoeffs, L):
    """Reconstruct (L, 2) positions; frame 0 equals slot 0 bit-exactly."""
    if L < 2:
        raise DomainError("need at least two frames to decode")
    values = coeffs.values
    k = values.shape[0]
    out = np.empty((L, 2))
    out[0] = values[0]
    if k > 1:
        steps = _dct_basis(L - 1, k - 1).T @ values[1:]
    else:
        steps = np.zeros((L - 1, 2))
    out[1:] = values[0] + np.cumsum(steps, axis=0)
    return out


def palette_color(object_index):
    """Deterministic golden-ratio hue palette; distinct for small indices."""
    if object_index < 0:
        raise DomainError("palette index must be non-negative")
    hue = ((object_index + 1) * GOLDEN_FRACTION) % 1.0
    r, g, b = colorsys.hsv_to_rgb(hue, 1.0, 1.0)
    return (int(r * 255 + 0.5), int(g * 255 + 0.5), int(b * 255 + 0.5))


def rasterize_boxes(screen_tracks, width, height, frame_count=None):
    """Color-coded box rasters: (L, H, W, 3) uint8, black background.

    Boxes are filled half-open ([cx - w/2, cx + w/2) by [cy - h/2,
    cy + h/2) on integer pixel indices), clipped to the canvas; later
    objects draw over earlier ones.
    """
    if width <= 0 or height <= 0:
        raise DomainError("canvas dimensions must be positive")
    tracks = list(screen_tracks)
    if frame_count is None:
        if not tracks:
            raise DomainError("frame count required when no boxes are given")
        frame_count = len(tracks[0])
    frames = np.zeros((frame_count, height, width, 3), dtype=np.uint8)
    colors = [palette_color(i) for i in range(len(tracks))]
    for index, track in enumerate(tracks):
        boxes = track.boxes
        for l in range(frame_count):
            cx, cy, w, h = boxes[l]
            left = max(int(np.ceil(cx - w / 2.0)), 0)
            right = min(int(np.ceil(cx + w / 2.0)), width)
            top = max(int(np.ceil(cy - h / 2.0)), 0)
            bottom = min(int(np.ceil(cy + h / 2.0)), height)
            if left < right and top < bottom:
                frames[l, top:bottom, left:right] = colors[index]
    return frames
