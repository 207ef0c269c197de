import numpy as np
import pytest

from motionforge.errors import ValidationError
from motionforge.types import (BBox2D, CameraPath, Extrinsics, Intrinsics,
                               KeyframeList, LocalTrackSpec, MotionDesign,
                               ObjectSpec, PatternMix, PatternSpec,
                               CameraKeyframe, PointTrack, SceneContext,
                               default_intrinsics, identity_extrinsics)


def test_intrinsics_invariants():
    Intrinsics(400, 400, 320, 176, 640, 352)
    with pytest.raises(ValidationError):
        Intrinsics(-1, 400, 320, 176, 640, 352)
    with pytest.raises(ValidationError):
        Intrinsics(400, 400, 700, 176, 640, 352)


def test_default_intrinsics_fov():
    k = default_intrinsics(640, 352)
    # vertical FOV 50 degrees: fy = 0.5 * H / tan(25 deg)
    assert k.fy == pytest.approx(0.5 * 352 / np.tan(np.radians(25.0)))
    assert k.fx == k.fy
    assert (k.cx, k.cy) == (320.0, 176.0)


def test_extrinsics_orthonormality_enforced():
    with pytest.raises(ValidationError):
        Extrinsics(np.eye(3) * 1.001, np.zeros(3))
    r = np.eye(3)
    r[0, 0] = -1.0  # det -1 reflection
    with pytest.raises(ValidationError):
        Extrinsics(r, np.zeros(3))


def test_extrinsics_compose_inverse_center():
    theta = 0.3
    r = np.array([[np.cos(theta), 0, -np.sin(theta)],
                  [0, 1, 0],
                  [np.sin(theta), 0, np.cos(theta)]])
    e = Extrinsics(r, np.array([0.1, -0.2, 0.4]))
    ident = e.compose(e.inverse())
    assert ident.is_identity(tol=1e-12)
    c = e.camera_center()
    np.testing.assert_allclose(e.apply(c), 0.0, atol=1e-12)


def test_camera_path_frame0_identity_required(intr640):
    good = CameraPath(((identity_extrinsics(), intr640),))
    assert len(good) == 1
    off = Extrinsics(np.eye(3), np.array([0.1, 0, 0]))
    with pytest.raises(ValidationError):
        CameraPath(((off, intr640),))


def test_bbox_and_pattern_invariants():
    with pytest.raises(ValidationError):
        BBox2D(0, 0, -5, 5)
    assert BBox2D(10, 10, 4, 4).contains(11.9, 8.1)
    with pytest.raises(ValidationError):
        PatternSpec("orbit", 0.5)  # missing radius
    with pytest.raises(ValidationError):
        PatternSpec("pan", 0.1, radius=2.0)  # stray radius
    with pytest.raises(ValidationError):
        PatternSpec("dolly", 0.0)  # zero magnitude only for static
    with pytest.raises(ValidationError):
        PatternSpec("static", 0.5)


def test_scene_context_checks():
    depth = np.full((4, 5), 2.0)
    mask = np.zeros((4, 5), dtype=np.int32)
    k = Intrinsics(10, 10, 2.5, 2.0, 5, 4)
    SceneContext(5, 4, depth, mask, k)
    bad = depth.copy()
    bad[0, 0] = -1.0
    with pytest.raises(ValidationError):
        SceneContext(5, 4, bad, mask, k)
    with pytest.raises(ValidationError):
        SceneContext(5, 4, depth, mask - 1, k)


def _design(**kw):
    base = dict(frame_count=8, fps=12,
                camera=PatternMix((PatternSpec("static", 0.0),)))
    base.update(kw)
    return MotionDesign(**base)


def test_design_key_box_ordering():
    obj = ObjectSpec(1, ((0, BBox2D(50, 50, 20, 20)), (7, BBox2D(80, 50, 20, 20))))
    _design(objects=(obj,))
    with pytest.raises(ValidationError, match="not increasing"):
        ObjectSpec(1, ((5, BBox2D(50, 50, 20, 20)), (0, BBox2D(80, 50, 20, 20))))
    with pytest.raises(ValidationError, match="span"):
        _design(objects=(ObjectSpec(
            1, ((0, BBox2D(50, 50, 20, 20)), (5, BBox2D(80, 50, 20, 20)))),))


def test_design_box_margin_bound():
    # +-50% margin is allowed, beyond it rejected
    ok = ObjectSpec(1, ((0, BBox2D(-300, 176, 40, 40)), (7, BBox2D(320, 176, 40, 40))))
    _design(objects=(ok,))
    too_far = ObjectSpec(1, ((0, BBox2D(-330, 176, 40, 40)), (7, BBox2D(320, 176, 40, 40))))
    with pytest.raises(ValidationError, match="expanded canvas"):
        _design(objects=(too_far,))


def test_local_track_rules():
    with pytest.raises(ValidationError, match="at least two"):
        LocalTrackSpec(((0, (1.0, 1.0)),))
    with pytest.raises(ValidationError, match="start at frame 0"):
        LocalTrackSpec(((1, (1.0, 1.0)), (2, (2.0, 2.0))))
    obj = ObjectSpec(3, ((0, BBox2D(50, 50, 20, 20)), (7, BBox2D(80, 50, 20, 20))))
    inside = LocalTrackSpec(((0, (52.0, 48.0)), (7, (60.0, 48.0))), parent_object=3)
    _design(objects=(obj,), local_tracks=(inside,))
    outside = LocalTrackSpec(((0, (90.0, 48.0)), (7, (95.0, 48.0))), parent_object=3)
    with pytest.raises(ValidationError, match="inside its parent"):
        _design(objects=(obj,), local_tracks=(outside,))


def test_design_camera_keyframe_rules(intr640):
    keys = KeyframeList((CameraKeyframe(0, identity_extrinsics(), 1.0),
                         CameraKeyframe(7, identity_extrinsics(), 1.0)))
    _design(camera=keys)
    bad = KeyframeList((CameraKeyframe(0, identity_extrinsics(), 1.0),
                        CameraKeyframe(5, identity_extrinsics(), 1.0)))
    with pytest.raises(ValidationError):
        _design(camera=bad)


def test_point_track_checks():
    PointTrack(np.zeros((4, 2)), np.ones(4, dtype=bool))
    pos = np.zeros((4, 2))
    pos[2, 0] = np.nan
    vis = np.ones(4, dtype=bool)
    with pytest.raises(ValidationError):
        PointTrack(pos, vis)
    # positions must be finite wherever visible; invisible frames are exempt
    vis[2] = False
    PointTrack(pos, vis)


def test_worker_count_env(monkeypatch):
    from motionforge.types import worker_count
    monkeypatch.setenv("MOTIONFORGE_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("MOTIONFORGE_THREADS", "0")
    assert worker_count() >= 1
    monkeypatch.setenv("MOTIONFORGE_THREADS", "junk")
    assert worker_count() >= 1
    monkeypatch.delenv("MOTIONFORGE_THREADS")
    assert worker_count() >= 1
