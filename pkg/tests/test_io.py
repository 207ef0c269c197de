import json
import struct

import numpy as np
import pytest

from motionforge import io as mfio
from motionforge.errors import (FormatError, NonPositiveDepthError, SchemaError,
                                ValidationError)
from motionforge.types import (BBox2D, BoxSignal, KeyframeList, LocalTrackSpec,
                               MotionDesign, ObjectSpec, PatternMix, PatternSpec,
                               PointTrack, ScreenBoxTrack, SignalBundle,
                               TrajCoeffs)


MINIMAL = {"frame_count": 32, "fps": 12,
           "camera": {"patterns": [["static", 0]]},
           "objects": [], "local_tracks": []}


def test_parse_minimal_static_design():
    design = mfio.parse_design(json.dumps(MINIMAL))
    assert design.frame_count == 32 and design.fps == 12
    assert isinstance(design.camera, PatternMix)
    assert design.camera.patterns[0].pattern == "static"
    assert design.objects == () and design.local_tracks == ()
    assert (design.canvas_width, design.canvas_height) == (640, 352)
    assert design.text_prompt == ""


def test_parse_reports_json_path_on_schema_error():
    doc = dict(MINIMAL)
    del doc["fps"]
    with pytest.raises(SchemaError, match=r"\$\.fps"):
        mfio.parse_design(json.dumps(doc))
    doc = dict(MINIMAL, fps="fast")
    with pytest.raises(SchemaError, match=r"\$\.fps"):
        mfio.parse_design(json.dumps(doc))
    doc = dict(MINIMAL, camera={"patterns": [["static", 0]], "keyframes": []})
    with pytest.raises(SchemaError, match="exactly one"):
        mfio.parse_design(json.dumps(doc))


def test_parse_rejects_nonincreasing_key_frames():
    doc = dict(MINIMAL)
    doc["objects"] = [{"id": 1, "depth_mode": "mask_mean", "key_boxes": [
        {"frame": 5, "cx": 100, "cy": 100, "w": 20, "h": 20},
        {"frame": 0, "cx": 150, "cy": 100, "w": 20, "h": 20}]}]
    with pytest.raises(ValidationError, match="not increasing"):
        mfio.parse_design(json.dumps(doc))


def _rich_design():
    doc = {
        "frame_count": 32, "fps": 24,
        "canvas": {"width": 640, "height": 352},
        "intrinsics": {"fx": 400.0, "fy": 410.0, "cx": 320.0, "cy": 176.0},
        "camera": {"patterns": [["dolly", 0.5], ["pan", 0.1],
                                ["orbit", 0.3, 2.0]]},
        "objects": [{"id": 1, "depth_mode": "perspective", "key_boxes": [
            {"frame": 0, "cx": 100.0, "cy": 100.0, "w": 40.0, "h": 30.0},
            {"frame": 31, "cx": 300.0, "cy": 120.0, "w": 80.0, "h": 60.0}]},
            {"id": 2, "depth_mode": "reference_point",
             "reference_points": [{"frame": 0, "x": 5.0, "y": 340.0}],
             "key_boxes": [
                 {"frame": 0, "cx": 500.0, "cy": 200.0, "w": 50.0, "h": 50.0},
                 {"frame": 15, "cx": 450.0, "cy": 210.0, "w": 55.0, "h": 52.0},
                 {"frame": 31, "cx": 400.0, "cy": 220.0, "w": 60.0, "h": 55.0}]}],
        "local_tracks": [
            {"parent": 1, "samples": [{"frame": 0, "x": 100.0, "y": 95.0},
                                      {"frame": 31, "x": 110.0, "y": 95.0}]},
            {"samples": [{"frame": 0, "x": 33.5, "y": 44.25},
                         {"frame": 10, "x": 40.0, "y": 50.0}]}],
        "text_prompt": "a quiet harbor at dawn",
    }
    return doc


def test_parse_preserves_pattern_order_and_values():
    design = mfio.parse_design(json.dumps(_rich_design()))
    names = [p.pattern for p in design.camera.patterns]
    assert names == ["dolly", "pan", "orbit"]
    assert design.camera.patterns[0].magnitude == 0.5
    assert design.camera.patterns[2].radius == 2.0


def test_serialize_parse_roundtrip_identity():
    design = mfio.parse_design(json.dumps(_rich_design()))
    text = mfio.serialize_design(design)
    again = mfio.parse_design(text)
    assert again == design
    assert mfio.serialize_design(again) == text


def test_keyframe_camera_roundtrip():
    theta = 0.2
    doc = dict(MINIMAL)
    doc["camera"] = {"keyframes": [
        {"frame": 0, "rotation": [1, 0, 0, 0, 1, 0, 0, 0, 1],
         "translation": [0, 0, 0], "focal_scale": 1.0},
        {"frame": 31,
         "rotation": [np.cos(theta), 0, -np.sin(theta), 0, 1, 0,
                      np.sin(theta), 0, np.cos(theta)],
         "translation": [0.1, 0.0, -0.2], "focal_scale": 1.25}]}
    design = mfio.parse_design(json.dumps(doc))
    assert isinstance(design.camera, KeyframeList)
    again = mfio.parse_design(mfio.serialize_design(design))
    assert again == design


# -- depth rasters ------------------------------------------------------------

def test_pfm_constant_grid(tmp_path):
    path = tmp_path / "d.pfm"
    mfio.write_pfm(np.ones((2, 2)), path)
    np.testing.assert_array_equal(mfio.load_depth(path), np.ones((2, 2)))


def test_pfm_bottom_up_storage(tmp_path):
    # hand-written PFM (independent of our writer): rows stored bottom-up,
    # so the top row of the loaded grid equals the LAST stored row
    path = tmp_path / "d.pfm"
    rows = np.array([[1.0, 2.0], [3.0, 4.0]], dtype="<f4")  # stored order
    with open(path, "wb") as fh:
        fh.write(b"Pf\n2 2\n-1.0\n")
        fh.write(rows.tobytes())
    grid = mfio.load_depth(path)
    np.testing.assert_array_equal(grid[0], [3.0, 4.0])
    np.testing.assert_array_equal(grid[1], [1.0, 2.0])


def test_pfm_write_read_bit_exact(tmp_path):
    rng = np.random.default_rng(1)
    grid = (0.5 + rng.random((7, 5)) * 9).astype(np.float32).astype(np.float64)
    path = tmp_path / "d.pfm"
    mfio.write_pfm(grid, path)
    np.testing.assert_array_equal(mfio.load_depth(path), grid)


def test_pfm_format_errors(tmp_path):
    path = tmp_path / "bad.pfm"
    path.write_bytes(b"PF\n2 2\n-1.0\n" + b"\x00" * 48)
    with pytest.raises(FormatError, match="3-channel"):
        mfio.load_depth(path)
    path.write_bytes(b"Pf\n2 2\n1.0\n" + b"\x00" * 16)
    with pytest.raises(FormatError, match="big-endian"):
        mfio.load_depth(path)
    path.write_bytes(b"Pf\n2 2\n-1.0\n" + b"\x00" * 8)
    with pytest.raises(FormatError, match="truncated"):
        mfio.load_depth(path)


def test_pfm_nonpositive_rejected(tmp_path):
    path = tmp_path / "d.pfm"
    grid = np.ones((2, 2))
    grid[0, 0] = 0.0
    mfio.write_pfm(grid, path)
    with pytest.raises(NonPositiveDepthError):
        mfio.load_depth(path)


def test_png16_scale(tmp_path):
    from PIL import Image
    path = tmp_path / "d.png"
    arr = np.full((3, 4), 1000, dtype=np.uint16)
    Image.fromarray(arr).save(path)
    (tmp_path / "d.png.scale").write_text("0.002\n")
    grid = mfio.load_depth(path)
    np.testing.assert_allclose(grid, 2.0, atol=1e-12)


def test_png16_missing_sidecar(tmp_path):
    from PIL import Image
    path = tmp_path / "d.png"
    Image.fromarray(np.full((3, 4), 1000, dtype=np.uint16)).save(path)
    with pytest.raises(FormatError, match="sidecar"):
        mfio.load_depth(path)


def test_png16_writer_roundtrip(tmp_path):
    grid = np.round(np.linspace(0.5, 8.0, 12)).reshape(3, 4) * 0.25 + 0.25
    path = tmp_path / "d.png"
    mfio.write_png16(grid, path, scale=0.25)
    np.testing.assert_allclose(mfio.load_depth(path), grid, atol=1e-12)


# -- bundle directories -------------------------------------------------------

def _tiny_bundle(with_track=True):
    L = 3
    frames = np.zeros((L, 4, 6, 3), dtype=np.uint8)
    if not with_track:
        return SignalBundle((), (), (), (), frames, fps=12)
    pos = np.array([[1.0, 2.0], [1.5, 2.25], [2.0 + 1e-13, 2.5]])
    track = PointTrack(pos, np.ones(L, dtype=bool))
    from motionforge.codec import dct_encode
    coeffs = dct_encode(pos, 3)
    boxes = ScreenBoxTrack(np.tile([3.0, 2.0, 2.0, 2.0], (L, 1)), np.full(L, 1.5))
    return SignalBundle((track,), (BoxSignal(7, boxes),), (), (coeffs,),
                        frames, fps=12)


def test_write_bundle_empty(tmp_path):
    manifest = mfio.write_bundle(_tiny_bundle(with_track=False), tmp_path)
    assert manifest["frame_count"] == 3
    assert json.loads((tmp_path / "tracks.json").read_text()) == []
    for l in range(3):
        assert (tmp_path / "bbox_frames" / f"{l:04d}.png").exists()
    from PIL import Image
    img = np.asarray(Image.open(tmp_path / "bbox_frames" / "0000.png"))
    assert img.max() == 0


def test_bundle_roundtrip_exact(tmp_path):
    bundle = _tiny_bundle()
    mfio.write_bundle(bundle, tmp_path)
    again = mfio.read_bundle(tmp_path)
    np.testing.assert_array_equal(again.camera_tracks[0].positions,
                                  bundle.camera_tracks[0].positions)
    np.testing.assert_array_equal(again.screen_boxes[0].track.boxes,
                                  bundle.screen_boxes[0].track.boxes)
    assert again.screen_boxes[0].object_id == 7
    np.testing.assert_array_equal(again.traj_coeffs[0].values,
                                  bundle.traj_coeffs[0].values)
    np.testing.assert_array_equal(again.bbox_frames, bundle.bbox_frames)


def test_write_bundle_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    mfio.write_bundle(_tiny_bundle(), a)
    mfio.write_bundle(_tiny_bundle(), b)
    for rel in ["manifest.json", "tracks.json", "boxes.json", "coeffs.json",
                "bbox_frames/0000.png", "bbox_frames/0002.png"]:
        assert (a / rel).read_bytes() == (b / rel).read_bytes(), rel


# -- property: parse . serialize == identity ----------------------------------

from hypothesis import given, settings
from hypothesis import strategies as st


@st.composite
def valid_designs(draw):
    L = draw(st.integers(4, 48))
    n_patterns = draw(st.integers(1, 3))
    patterns = []
    for _ in range(n_patterns):
        name = draw(st.sampled_from(["trucking", "pedestal", "dolly", "pan",
                                     "tilt", "roll", "zoom", "orbit", "circle"]))
        mag = draw(st.floats(0.01, 0.9).map(lambda m: round(m, 6)))
        sign = draw(st.sampled_from([1.0, -1.0]))
        if name in ("orbit", "circle"):
            patterns.append(PatternSpec(name, sign * mag,
                                        draw(st.floats(0.5, 4.0).map(lambda r: round(r, 6)))))
        else:
            patterns.append(PatternSpec(name, sign * mag))
    objects = []
    if draw(st.booleans()):
        mid = draw(st.integers(1, L - 2))
        objects.append(ObjectSpec(1, (
            (0, BBox2D(100.0, 100.0, 40.0, 30.0)),
            (mid, BBox2D(200.0, 120.0, 50.0, 35.0)),
            (L - 1, BBox2D(300.0, 140.0, 60.0, 40.0))), "perspective"))
    tracks = []
    if objects and draw(st.booleans()):
        tracks.append(LocalTrackSpec(((0, (100.0, 100.0)), (L - 1, (110.0, 95.0))),
                                     parent_object=1))
    prompt = draw(st.text(alphabet=st.characters(codec="utf-8",
                                                 exclude_categories=("Cs",)),
                          max_size=40))
    return MotionDesign(frame_count=L, fps=draw(st.sampled_from([12, 24])),
                        camera=PatternMix(tuple(patterns)), objects=tuple(objects),
                        local_tracks=tuple(tracks), text_prompt=prompt)


@settings(max_examples=60, deadline=None)
@given(valid_designs())
def test_parse_serialize_identity_property(design):
    assert mfio.parse_design(mfio.serialize_design(design)) == design
