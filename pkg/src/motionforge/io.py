"""File formats: design JSON, depth rasters (PFM / 16-bit PNG), signal
bundle directories.

All writers are deterministic: identical inputs produce byte-identical
files.
"""
from __future__ import annotations

import io as _io
import json
import struct
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import (FormatError, NonPositiveDepthError, SchemaError,
                     ValidationError)
from .types import (BBox2D, BoxSignal, CameraKeyframe, Extrinsics, Intrinsics,
                    KeyframeList, LocalTrackSpec, MotionDesign, ObjectSpec,
                    PatternMix, PatternSpec, PointTrack, ScreenBoxTrack,
                    SignalBundle, TrajCoeffs, worker_count)

DEFAULT_CANVAS = (640, 352)


# ---------------------------------------------------------------------------
# design JSON

_REQUIRED = object()


def _expect(obj, path, types, what):
    if not isinstance(obj, types):
        raise SchemaError(path, f"expected {what}")
    return obj


def _get(doc, key, path, types, what, default=_REQUIRED):
    if key not in doc:
        if default is not _REQUIRED:
            return default
        raise SchemaError(f"{path}.{key}", "missing required field")
    return _expect(doc[key], f"{path}.{key}", types, what)


def _number(doc, key, path, default=_REQUIRED):
    val = _get(doc, key, path, (int, float), "a number", default)
    if isinstance(val, bool):
        raise SchemaError(f"{path}.{key}", "expected a number")
    return float(val)


def _integer(doc, key, path, default=_REQUIRED):
    val = _get(doc, key, path, int, "an integer", default)
    if isinstance(val, bool):
        raise SchemaError(f"{path}.{key}", "expected an integer")
    return val


def _parse_camera(doc, path):
    has_patterns = "patterns" in doc
    has_keys = "keyframes" in doc
    if has_patterns == has_keys:
        raise SchemaError(path, "camera must carry exactly one of 'patterns' or 'keyframes'")
    if has_patterns:
        entries = _expect(doc["patterns"], f"{path}.patterns", list, "a list")
        specs = []
        for i, entry in enumerate(entries):
            epath = f"{path}.patterns[{i}]"
            entry = _expect(entry, epath, list, "a [name, magnitude, radius?] list")
            if len(entry) not in (2, 3):
                raise SchemaError(epath, "expected [name, magnitude] or [name, magnitude, radius]")
            name = _expect(entry[0], f"{epath}[0]", str, "a pattern name")
            mag = _expect(entry[1], f"{epath}[1]", (int, float), "a number")
            radius = None
            if len(entry) == 3:
                radius = float(_expect(entry[2], f"{epath}[2]", (int, float), "a number"))
            specs.append(PatternSpec(name, float(mag), radius))
        return PatternMix(tuple(specs))
    entries = _expect(doc["keyframes"], f"{path}.keyframes", list, "a list")
    keys = []
    for i, entry in enumerate(entries):
        epath = f"{path}.keyframes[{i}]"
        entry = _expect(entry, epath, dict, "an object")
        frame = _integer(entry, "frame", epath)
        rot = _expect(entry.get("rotation"), f"{epath}.rotation", list, "a 9-number list")
        if len(rot) != 9:
            raise SchemaError(f"{epath}.rotation", "expected 9 numbers (row-major 3x3)")
        trans = _expect(entry.get("translation"), f"{epath}.translation", list, "a 3-number list")
        if len(trans) != 3:
            raise SchemaError(f"{epath}.translation", "expected 3 numbers")
        focal = _number(entry, "focal_scale", epath, 1.0)
        pose = Extrinsics(np.array(rot, dtype=np.float64).reshape(3, 3),
                          np.array(trans, dtype=np.float64))
        keys.append(CameraKeyframe(frame, pose, focal))
    return KeyframeList(tuple(keys))


def parse_design(text) -> MotionDesign:
    """Parse and validate a motion design document (JSON text or dict)."""
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"not valid JSON: {exc}") from exc
    else:
        doc = text
    doc = _expect(doc, "$", dict, "a JSON object")

    frame_count = _integer(doc, "frame_count", "$")
    fps = _integer(doc, "fps", "$")
    canvas = _get(doc, "canvas", "$", dict, "an object", None)
    if canvas is None:
        width, height = DEFAULT_CANVAS
    else:
        width = _integer(canvas, "width", "$.canvas")
        height = _integer(canvas, "height", "$.canvas")
    intr_doc = _get(doc, "intrinsics", "$", dict, "an object", None)
    intrinsics = None
    if intr_doc is not None:
        intrinsics = Intrinsics(_number(intr_doc, "fx", "$.intrinsics"),
                                _number(intr_doc, "fy", "$.intrinsics"),
                                _number(intr_doc, "cx", "$.intrinsics"),
                                _number(intr_doc, "cy", "$.intrinsics"),
                                width, height)
    camera = _parse_camera(_get(doc, "camera", "$", dict, "an object"), "$.camera")

    objects = []
    for i, entry in enumerate(_get(doc, "objects", "$", list, "a list", [])):
        opath = f"$.objects[{i}]"
        entry = _expect(entry, opath, dict, "an object")
        oid = _integer(entry, "id", opath)
        mode = _get(entry, "depth_mode", opath, str, "a string", "mask_mean")
        refs = []
        for j, ref in enumerate(_get(entry, "reference_points", opath, list, "a list", [])):
            rpath = f"{opath}.reference_points[{j}]"
            ref = _expect(ref, rpath, dict, "an object")
            refs.append((_integer(ref, "frame", rpath),
                         (_number(ref, "x", rpath), _number(ref, "y", rpath))))
        boxes = []
        kb = _get(entry, "key_boxes", opath, list, "a list")
        for j, box in enumerate(kb):
            bpath = f"{opath}.key_boxes[{j}]"
            box = _expect(box, bpath, dict, "an object")
            boxes.append((_integer(box, "frame", bpath),
                          BBox2D(_number(box, "cx", bpath), _number(box, "cy", bpath),
                                 _number(box, "w", bpath), _number(box, "h", bpath))))
        objects.append(ObjectSpec(oid, tuple(boxes), mode, tuple(refs)))

    tracks = []
    for i, entry in enumerate(_get(doc, "local_tracks", "$", list, "a list", [])):
        tpath = f"$.local_tracks[{i}]"
        entry = _expect(entry, tpath, dict, "an object")
        parent = entry.get("parent")
        if parent is not None:
            parent = _integer(entry, "parent", tpath)
        samples = []
        for j, sample in enumerate(_get(entry, "samples", tpath, list, "a list")):
            spath = f"{tpath}.samples[{j}]"
            sample = _expect(sample, spath, dict, "an object")
            samples.append((_integer(sample, "frame", spath),
                            (_number(sample, "x", spath), _number(sample, "y", spath))))
        tracks.append(LocalTrackSpec(tuple(samples), parent))

    prompt = _get(doc, "text_prompt", "$", str, "a string", "")
    return MotionDesign(frame_count=frame_count, fps=fps, camera=camera,
                        objects=tuple(objects), local_tracks=tuple(tracks),
                        text_prompt=prompt, canvas_width=width,
                        canvas_height=height, intrinsics=intrinsics)


def serialize_design(design: MotionDesign) -> str:
    """Inverse of parse_design; parse(serialize(d)) == d."""
    doc = {
        "frame_count": design.frame_count,
        "fps": design.fps,
        "canvas": {"width": design.canvas_width, "height": design.canvas_height},
    }
    if design.intrinsics is not None:
        k = design.intrinsics
        doc["intrinsics"] = {"fx": k.fx, "fy": k.fy, "cx": k.cx, "cy": k.cy}
    if isinstance(design.camera, PatternMix):
        doc["camera"] = {"patterns": [
            [s.pattern, s.magnitude] if s.radius is None
            else [s.pattern, s.magnitude, s.radius]
            for s in design.camera.patterns]}
    else:
        doc["camera"] = {"keyframes": [
            {"frame": k.frame,
             "rotation": [float(x) for x in k.pose.rotation.reshape(-1)],
             "translation": [float(x) for x in k.pose.translation],
             "focal_scale": k.focal_scale}
            for k in design.camera.keys]}
    doc["objects"] = [
        {"id": o.object_id, "depth_mode": o.depth_mode,
         **({"reference_points": [{"frame": f, "x": p[0], "y": p[1]}
                                  for f, p in o.reference_points]}
            if o.reference_points else {}),
         "key_boxes": [{"frame": f, "cx": b.cx, "cy": b.cy, "w": b.w, "h": b.h}
                       for f, b in o.key_boxes]}
        for o in design.objects]
    doc["local_tracks"] = [
        {**({"parent": t.parent_object} if t.parent_object is not None else {}),
         "samples": [{"frame": f, "x": p[0], "y": p[1]} for f, p in t.samples]}
        for t in design.local_tracks]
    doc["text_prompt"] = design.text_prompt
    return json.dumps(doc, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# depth rasters

def load_depth(path):
    """Read a depth raster: PFM ('Pf', little-endian) or 16-bit PNG with a
    '<file>.scale' sidecar holding meters per unit.

    Returns a top-left-origin float grid with all values > 0.
    """
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(2)
    if magic == b"Pf":
        grid = _load_pfm(path)
    elif magic == b"\x89P":
        grid = _load_png16(path)
    elif magic == b"PF":
        raise FormatError(f"{path}: 3-channel PFM is not a depth map")
    else:
        raise FormatError(f"{path}: not a PFM or PNG depth raster")
    if not np.all(np.isfinite(grid)):
        raise FormatError(f"{path}: depth contains non-finite values")
    if np.any(grid <= 0):
        raise NonPositiveDepthError(f"{path}: depth contains values <= 0")
    return grid


def _load_pfm(path):
    with open(path, "rb") as fh:
        header = fh.readline().strip()
        if header != b"Pf":
            raise FormatError(f"{path}: bad PFM magic {header!r}")
        dims = fh.readline().split()
        if len(dims) != 2:
            raise FormatError(f"{path}: bad PFM dimension line")
        width, height = int(dims[0]), int(dims[1])
        scale = float(fh.readline().strip())
        if scale >= 0:
            raise FormatError(f"{path}: big-endian PFM not supported")
        buf = fh.read(width * height * 4)
        if len(buf) != width * height * 4:
            raise FormatError(f"{path}: truncated PFM payload")
    grid = np.frombuffer(buf, dtype="<f4").reshape(height, width)
    return np.flipud(grid).astype(np.float64)  # PFM rows are stored bottom-up


def write_pfm(grid, path):
    """Write a float grid as little-endian single-channel PFM (bottom-up)."""
    grid = np.asarray(grid, dtype=np.float32)
    if grid.ndim != 2:
        raise FormatError("PFM writer expects a 2D grid")
    height, width = grid.shape
    with open(path, "wb") as fh:
        fh.write(b"Pf\n")
        fh.write(f"{width} {height}\n".encode())
        fh.write(b"-1.0\n")
        fh.write(np.flipud(grid).astype("<f4").tobytes())


def _sidecar(path):
    return Path(str(path) + ".scale")


def _load_png16(path):
    img = Image.open(path)
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise FormatError(f"{path}: depth PNG must be single-channel")
    sidecar = _sidecar(path)
    if not sidecar.exists():
        raise FormatError(f"{path}: missing sidecar scale file {sidecar.name}")
    try:
        scale = float(sidecar.read_text().strip())
    except ValueError as exc:
        raise FormatError(f"{sidecar}: not a number") from exc
    if scale <= 0:
        raise FormatError(f"{sidecar}: scale must be positive")
    return arr.astype(np.float64) * scale


def write_png16(grid, path, scale):
    """Quantize a depth grid to 16-bit PNG plus its sidecar scale file."""
    grid = np.asarray(grid, dtype=np.float64)
    values = np.round(grid / scale)
    if np.any(values < 0) or np.any(values > 65535):
        raise FormatError("depth does not fit 16 bits at this scale")
    Image.fromarray(values.astype(np.uint16)).save(path, format="PNG")
    _sidecar(path).write_text(f"{scale}\n")


def load_mask(path):
    """Object label mask from a grayscale PNG (0 = static background)."""
    arr = np.asarray(Image.open(path))
    if arr.ndim == 3:
        raise FormatError(f"{path}: mask PNG must be single-channel")
    return arr.astype(np.int32)


def load_image(path):
    """RGB image as (H, W, 3) uint8."""
    return np.asarray(Image.open(path).convert("RGB"))


# ---------------------------------------------------------------------------
# signal bundle directories

def _compact_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def tracks_payload(bundle: SignalBundle):
    out = []
    for kind, tracks in (("camera", bundle.camera_tracks),
                         ("local", bundle.local_tracks)):
        for t in tracks:
            out.append({"kind": kind,
                        "positions": [[float(u), float(v)] for u, v in t.positions],
                        "visible": [bool(x) for x in t.visible]})
    return out


def boxes_payload(bundle: SignalBundle):
    return [{"id": sig.object_id,
             "boxes": [{"cx": float(b[0]), "cy": float(b[1]),
                        "w": float(b[2]), "h": float(b[3])}
                       for b in sig.track.boxes],
             "depth": [float(z) for z in sig.track.z]}
            for sig in bundle.screen_boxes]


def coeffs_payload(bundle: SignalBundle):
    return [{"track_index": i, "K": c.k,
             "coeffs": [[float(u), float(v)] for u, v in c.values]}
            for i, c in enumerate(bundle.traj_coeffs)]


def _png_bytes(frame):
    buf = _io.BytesIO()
    Image.fromarray(frame).save(buf, format="PNG")
    return buf.getvalue()


def write_frames(frames, directory):
    """Write (L, H, W, 3) uint8 frames as zero-padded PNGs."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        encoded = list(pool.map(_png_bytes, frames))
    for l, data in enumerate(encoded):
        (directory / f"{l:04d}.png").write_bytes(data)


def write_bundle(bundle: SignalBundle, directory):
    """Write a bundle directory (tracks/boxes/coeffs JSON, bbox frame PNGs,
    manifest). Returns the manifest dict."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "tracks.json").write_text(_compact_json(tracks_payload(bundle)))
    (directory / "boxes.json").write_text(_compact_json(boxes_payload(bundle)))
    (directory / "coeffs.json").write_text(_compact_json(coeffs_payload(bundle)))
    write_frames(bundle.bbox_frames, directory / "bbox_frames")
    manifest = {
        "frame_count": bundle.frame_count,
        "fps": bundle.fps,
        "canvas": {"width": int(bundle.bbox_frames.shape[2]),
                   "height": int(bundle.bbox_frames.shape[1])},
        "files": {"tracks": "tracks.json", "boxes": "boxes.json",
                  "coeffs": "coeffs.json", "bbox_frames_dir": "bbox_frames"},
        "versions": {"format": 1},
        "warnings": list(bundle.warnings),
    }
    (directory / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True))
    return manifest


def read_bundle(directory):
    """Read a bundle directory back into a SignalBundle."""
    directory = Path(directory)
    manifest = json.loads((directory / "manifest.json").read_text())
    tracks_doc = json.loads((directory / "tracks.json").read_text())
    boxes_doc = json.loads((directory / "boxes.json").read_text())
    coeffs_doc = json.loads((directory / "coeffs.json").read_text())

    camera, local = [], []
    for entry in tracks_doc:
        track = PointTrack(np.array(entry["positions"], dtype=np.float64).reshape(-1, 2),
                           np.array(entry["visible"], dtype=bool))
        (camera if entry["kind"] == "camera" else local).append(track)
    signals = []
    for entry in boxes_doc:
        boxes = np.array([[b["cx"], b["cy"], b["w"], b["h"]] for b in entry["boxes"]],
                         dtype=np.float64)
        signals.append(BoxSignal(entry["id"],
                                 ScreenBoxTrack(boxes, np.array(entry["depth"]))))
    coeffs = [TrajCoeffs(np.array(entry["coeffs"], dtype=np.float64))
              for entry in sorted(coeffs_doc, key=lambda e: e["track_index"])]

    L = manifest["frame_count"]
    frame_dir = directory / manifest["files"]["bbox_frames_dir"]
    frames = np.stack([np.asarray(Image.open(frame_dir / f"{l:04d}.png").convert("RGB"))
                       for l in range(L)]) if L else np.zeros((0, 1, 1, 3), np.uint8)
    return SignalBundle(tuple(camera), tuple(signals), tuple(local), tuple(coeffs),
                        frames, fps=manifest["fps"],
                        warnings=tuple(manifest.get("warnings", ())))
