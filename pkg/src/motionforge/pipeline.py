"""End-to-end translation: a scene-space MotionDesign plus its SceneContext
become the full screen-space SignalBundle."""
from __future__ import annotations

from .boxmotion import assign_depths, interpolate_boxes, project_boxes
from .campath import keyframe_path, mix_patterns
from .codec import DEFAULT_K, dct_encode, rasterize_boxes
from .errors import DimensionMismatchError
from .localmotion import densify_local, translate_local
from .types import (BoxSignal, CameraPath, KeyframeList, MotionDesign,
                    PatternMix, SceneBoxTrack, SceneContext, SignalBundle)
from .warp import synthesize_camera_tracks

DEFAULT_POINTS = 100


def build_camera_path(design: MotionDesign, intrinsics0) -> CameraPath:
    """Camera path from the design's pattern mix or keyframe list."""
    if isinstance(design.camera, PatternMix):
        return mix_patterns(design.camera.patterns, design.frame_count, intrinsics0)
    if isinstance(design.camera, KeyframeList):
        keys = [(k.frame, k.pose, k.focal_scale) for k in design.camera.keys]
        return keyframe_path(keys, design.frame_count, intrinsics0)
    raise TypeError(f"unknown camera spec {type(design.camera).__name__}")


def check_context(design: MotionDesign, ctx: SceneContext):
    if (ctx.width, ctx.height) != (design.canvas_width, design.canvas_height):
        raise DimensionMismatchError(
            f"design canvas {design.canvas_width}x{design.canvas_height} does not "
            f"match scene {ctx.width}x{ctx.height}")


def translate_design(design: MotionDesign, ctx: SceneContext, *,
                     n_points=DEFAULT_POINTS, seed=0, coeff_count=DEFAULT_K):
    """Translate a design into (CameraPath, SignalBundle).

    Camera movement becomes static-point tracks, object intent becomes
    calibrated screen box tracks plus color-coded rasters, local polylines
    become decomposed point tracks, and every track is DCT-encoded.
    """
    check_context(design, ctx)
    L = design.frame_count
    path = build_camera_path(design, ctx.intrinsics0)

    camera_tracks = synthesize_camera_tracks(ctx, path, n_points, seed)

    warnings = []
    box_signals = []
    scene_box0 = {}
    for spec in design.objects:
        boxes = interpolate_boxes(spec.key_boxes, L)
        depths, notes = assign_depths(boxes, spec, ctx)
        warnings.extend(notes)
        scene = SceneBoxTrack(boxes, depths)
        screen = project_boxes(scene, path, ctx.intrinsics0)
        box_signals.append(BoxSignal(spec.object_id, screen))
        scene_box0[spec.object_id] = boxes[0]

    local_tracks = []
    for spec in design.local_tracks:
        dense = densify_local(spec, L)
        parent = None
        if spec.parent_object is not None:
            screen = next(sig.track for sig in box_signals
                          if sig.object_id == spec.parent_object)
            parent = (scene_box0[spec.parent_object], screen)
        local_tracks.append(translate_local(spec, dense, parent, path, ctx))

    k = min(coeff_count, L)
    coeffs = [dct_encode(t.positions, k) for t in camera_tracks + local_tracks]
    frames = rasterize_boxes([sig.track for sig in box_signals],
                             ctx.width, ctx.height, frame_count=L)
    bundle = SignalBundle(tuple(camera_tracks), tuple(box_signals),
                          tuple(local_tracks), tuple(coeffs), frames,
                          fps=design.fps, warnings=tuple(warnings))
    return path, bundle
