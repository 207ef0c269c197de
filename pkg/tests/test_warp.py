import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motionforge.campath import mix_patterns
from motionforge.errors import (DimensionMismatchError, DomainError,
                                NoStaticRegionError)
from motionforge.types import Extrinsics, PatternSpec, identity_extrinsics
from motionforge.warp import (bilinear_depth, project, render_preview,
                              sample_static_points, synthesize_camera_tracks,
                              unproject)
from tests.conftest import make_context, wavy_depth


def test_unproject_principal_point(intr640):
    np.testing.assert_allclose(unproject((320.0, 176.0), 2.0, intr640),
                               [0.0, 0.0, 2.0], atol=0.0)


def test_unproject_off_center(intr640):
    # (480 - 320) / 400 * 2 = 0.8
    np.testing.assert_allclose(unproject((480.0, 176.0), 2.0, intr640),
                               [0.8, 0.0, 2.0], atol=1e-15)
    with pytest.raises(DomainError):
        unproject((0.0, 0.0), -1.0, intr640)


@settings(max_examples=200, deadline=None)
@given(u=st.floats(0, 639), v=st.floats(0, 351), z=st.floats(0.05, 50))
def test_project_unproject_roundtrip(u, v, z):
    from motionforge.types import Intrinsics
    intr = Intrinsics(400.0, 400.0, 320.0, 176.0, 640, 352)
    pix, z_out, _ = project(unproject((u, v), z, intr), identity_extrinsics(), intr)
    np.testing.assert_allclose(pix, [u, v], atol=1e-9)
    assert z_out == pytest.approx(z, abs=1e-12)


def test_project_identity_and_visibility(intr640):
    pix, z, vis = project(np.array([0.0, 0.0, 2.0]), identity_extrinsics(), intr640)
    np.testing.assert_allclose(pix, [320.0, 176.0], atol=0.0)
    assert vis
    # behind the camera: invisible but finite
    pix, z, vis = project(np.array([0.0, 0.0, -1.0]), identity_extrinsics(), intr640)
    assert not vis and np.all(np.isfinite(pix))
    # off canvas: invisible
    _, _, vis = project(np.array([10.0, 0.0, 2.0]), identity_extrinsics(), intr640)
    assert not vis


def test_project_dolly_case(intr640):
    e = Extrinsics(np.eye(3), np.array([0.0, 0.0, -0.5]))
    pix, z, vis = project(np.array([0.8, 0.0, 2.0]), e, intr640)
    assert pix[0] == pytest.approx(533.3333333333334, abs=1e-9)
    assert z == pytest.approx(1.5)


def test_bilinear_depth_interpolates():
    depth = np.array([[1.0, 3.0], [5.0, 7.0]])
    ctx = make_context(width=2, height=2, depth=depth)
    assert bilinear_depth(ctx, (0.0, 0.0)) == 1.0
    assert bilinear_depth(ctx, (1.0, 1.0)) == 7.0
    assert bilinear_depth(ctx, (0.5, 0.5)) == pytest.approx(4.0)
    assert bilinear_depth(ctx, (0.5, 0.0)) == pytest.approx(2.0)


def test_sampling_empty_and_deterministic(flat_ctx):
    assert sample_static_points(flat_ctx, 0, seed=1).shape == (0, 2)
    a = sample_static_points(flat_ctx, 5, seed=7)
    b = sample_static_points(flat_ctx, 5, seed=7)
    np.testing.assert_array_equal(a, b)
    c = sample_static_points(flat_ctx, 5, seed=8)
    assert not np.array_equal(a, c)


def test_sampling_respects_mask():
    mask = np.zeros((44, 64), dtype=np.int32)
    mask[:, :32] = 1  # left half is object 1
    ctx = make_context(mask=mask)
    pts = sample_static_points(ctx, 100, seed=3)
    assert np.all(pts[:, 0] >= 32)
    assert len(np.unique(pts[:, 0] * 1000 + pts[:, 1])) == len(pts)


def test_sampling_no_static_region():
    mask = np.ones((44, 64), dtype=np.int32)
    ctx = make_context(mask=mask)
    with pytest.raises(NoStaticRegionError):
        sample_static_points(ctx, 1, seed=0)


def test_static_tracks_constant(flat_ctx):
    path = mix_patterns([PatternSpec("static", 0.0)], 4, flat_ctx.intrinsics0)
    tracks = synthesize_camera_tracks(flat_ctx, path, 10, seed=0)
    assert len(tracks) == 10
    for t in tracks:
        for l in range(4):
            np.testing.assert_array_equal(t.positions[l], t.positions[0])
        assert t.visible.all()


def test_trucking_uniform_depth_pure_shift(flat_ctx):
    # depth 2 everywhere, trucking 0.1 over 2 frames: shift is -fx*0.1/2
    path = mix_patterns([PatternSpec("trucking", 0.1)], 2, flat_ctx.intrinsics0)
    tracks = synthesize_camera_tracks(flat_ctx, path, 20, seed=1)
    fx = flat_ctx.intrinsics0.fx
    for t in tracks:
        delta = t.positions[1] - t.positions[0]
        np.testing.assert_allclose(delta, [-fx * 0.1 / 2.0, 0.0], atol=1e-9)
    # translates of one another: pairwise deltas identical
    deltas = np.array([t.positions[1] - t.positions[0] for t in tracks])
    np.testing.assert_allclose(deltas - deltas[0], 0.0, atol=1e-9)


def test_track_start_grounding_bit_exact(wavy_ctx):
    path = mix_patterns([PatternSpec("orbit", 0.3, radius=2.0)], 5,
                        wavy_ctx.intrinsics0)
    pts = sample_static_points(wavy_ctx, 30, seed=4)
    tracks = synthesize_camera_tracks(wavy_ctx, path, 30, seed=4)
    for p, t in zip(pts, tracks):
        assert np.array_equal(t.positions[0], p)


def test_dolly_in_near_points_move_more():
    # two depth planes; same off-center pixel column sampled via full control
    depth = np.full((44, 64), 6.0)
    depth[:, :32] = 2.0  # near on the left
    ctx = make_context(depth=depth)
    path = mix_patterns([PatternSpec("dolly", 0.5)], 2, ctx.intrinsics0)
    near = unproject((10.0, 22.0), 2.0, ctx.intrinsics0)
    far = unproject((10.0, 22.0), 6.0, ctx.intrinsics0)
    pn, _, _ = project(near, path.extrinsics(1), path.intrinsics(1))
    pf, _, _ = project(far, path.extrinsics(1), path.intrinsics(1))
    assert abs(pn[0] - 10.0) > abs(pf[0] - 10.0)


# -- preview rendering --------------------------------------------------------

def _checker_image(h, w):
    img = np.zeros((h, w, 3), dtype=np.uint8)
    img[(np.add.outer(np.arange(h), np.arange(w)) % 2) == 0] = (200, 60, 30)
    img[:, :, 2] = np.tile(np.arange(w) % 251, (h, 1)).astype(np.uint8)
    return img


def test_preview_static_is_input(flat_ctx):
    img = _checker_image(44, 64)
    path = mix_patterns([PatternSpec("static", 0.0)], 3, flat_ctx.intrinsics0)
    frames = render_preview(img, flat_ctx, path)
    assert frames.shape == (3, 44, 64, 3)
    for l in range(3):
        np.testing.assert_array_equal(frames[l], img)


def test_preview_trucking_integer_shift():
    # flat depth and a trucking magnitude chosen for an exact 4-pixel shift
    ctx = make_context(width=64, height=44, depth=np.full((44, 64), 2.0))
    fx = ctx.intrinsics0.fx
    mag = 4 * 2.0 / fx  # shift = fx * mag / depth = 4 px
    path = mix_patterns([PatternSpec("trucking", mag)], 2, ctx.intrinsics0)
    img = _checker_image(44, 64)
    frames = render_preview(img, ctx, path)
    np.testing.assert_array_equal(frames[0], img)
    np.testing.assert_array_equal(frames[1][:, :60], img[:, 4:])
    assert (frames[1][:, 60:] == 0).all()


def test_preview_zbuffer_nearer_wins():
    # two points on the same ray land on one pixel; the nearer one must win
    from motionforge.types import Intrinsics
    from motionforge.warp import _splat_frame
    intr = Intrinsics(2.0, 2.0, 1.0, 0.5, 2, 1)
    world = np.array([[0.0, 0.0, 2.0], [0.0, 0.0, 4.0]])
    colors = np.array([[255, 0, 0], [0, 255, 0]], dtype=np.uint8)
    frame = _splat_frame(world, colors, identity_extrinsics(), intr, 1, 2)
    np.testing.assert_array_equal(frame[0, 1], [255, 0, 0])
    # order independence: swapping the input order keeps the nearer color
    frame = _splat_frame(world[::-1].copy(), colors[::-1].copy(),
                         identity_extrinsics(), intr, 1, 2)
    np.testing.assert_array_equal(frame[0, 1], [255, 0, 0])


def test_preview_dimension_mismatch(flat_ctx):
    img = np.zeros((10, 10, 3), dtype=np.uint8)
    path = mix_patterns([PatternSpec("static", 0.0)], 2, flat_ctx.intrinsics0)
    with pytest.raises(DimensionMismatchError):
        render_preview(img, flat_ctx, path)
