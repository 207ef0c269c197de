"""Overlapping-chunk recomputation for autoregressive generation.

Signals are translated once globally, then each chunk is sliced out and its
camera path re-anchored to the chunk's first frame, so consecutive chunks
agree exactly over their overlap.
"""
from __future__ import annotations

from dataclasses import dataclass

from .codec import DEFAULT_K, dct_encode
from .errors import ValidationError
from .pipeline import translate_design
from .types import (BoxSignal, CameraPath, MotionDesign, PointTrack,
                    SceneContext, ScreenBoxTrack, SignalBundle)

DEFAULT_CHUNK_LEN = 64
DEFAULT_OVERLAP = 16


@dataclass(frozen=True)
class Chunk:
    start: int
    bundle: SignalBundle
    path: CameraPath


@dataclass(frozen=True)
class ChunkPlan:
    chunk_len: int
    overlap: int
    chunks: tuple  # of Chunk

    @property
    def starts(self):
        return [c.start for c in self.chunks]


def rebase_path(path: CameraPath, anchor) -> CameraPath:
    """Re-anchor a path so frame `anchor` becomes the identity reference:
    E'_l = E_{anchor+l} o E_anchor^{-1}."""
    if not 0 <= anchor < len(path):
        raise IndexError(f"anchor {anchor} outside [0, {len(path)})")
    if anchor == 0:
        return path
    inv = path.extrinsics(anchor).inverse()
    frames = []
    for l in range(anchor, len(path)):
        frames.append((path.extrinsics(l).compose(inv), path.intrinsics(l)))
    return CameraPath(tuple(frames))


def _slice_track(track: PointTrack, start, stop):
    return PointTrack(track.positions[start:stop], track.visible[start:stop])


def _slice_bundle(bundle: SignalBundle, start, stop, coeff_count):
    camera = tuple(_slice_track(t, start, stop) for t in bundle.camera_tracks)
    local = tuple(_slice_track(t, start, stop) for t in bundle.local_tracks)
    boxes = tuple(BoxSignal(sig.object_id,
                            ScreenBoxTrack(sig.track.boxes[start:stop],
                                           sig.track.z[start:stop]))
                  for sig in bundle.screen_boxes)
    k = min(coeff_count, stop - start)
    coeffs = tuple(dct_encode(t.positions, k) for t in camera + local)
    return SignalBundle(camera, boxes, local, coeffs,
                        bundle.bbox_frames[start:stop], fps=bundle.fps,
                        warnings=bundle.warnings)


def chain_chunks(design: MotionDesign, ctx: SceneContext, chunk_len=DEFAULT_CHUNK_LEN,
                 overlap=DEFAULT_OVERLAP, *, n_points=None, seed=0,
                 coeff_count=DEFAULT_K) -> ChunkPlan:
    """Split a design into overlapping chunks with re-anchored signals.

    Chunk i covers frames [i * (chunk_len - overlap), ... + chunk_len); the
    stride must tile frame_count exactly. Screen-space signals are slices of
    the one global translation (DCT codes re-encoded per chunk), so the
    overlap regions of consecutive chunks are identical by construction.
    """
    L = design.frame_count
    if not 0 < overlap < chunk_len:
        raise ValidationError("overlap must satisfy 0 < overlap < chunk_len")
    if L < chunk_len:
        raise ValidationError(f"frame_count {L} shorter than one chunk ({chunk_len})")
    stride = chunk_len - overlap
    if (L - chunk_len) % stride != 0:
        raise ValidationError(
            f"frame_count {L} does not tile into {chunk_len}-frame chunks with "
            f"overlap {overlap}; use frame_count = {chunk_len} + k * {stride}")

    kwargs = {} if n_points is None else {"n_points": n_points}
    path, bundle = translate_design(design, ctx, seed=seed,
                                    coeff_count=coeff_count, **kwargs)

    chunks = []
    count = (L - chunk_len) // stride + 1
    for i in range(count):
        start = i * stride
        sliced = _slice_bundle(bundle, start, start + chunk_len, coeff_count)
        local_path = CameraPath(rebase_path(path, start).frames[:chunk_len])
        chunks.append(Chunk(start, sliced, local_path))
    return ChunkPlan(chunk_len, overlap, tuple(chunks))
