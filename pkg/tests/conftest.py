import numpy as np
import pytest

from motionforge.types import Intrinsics, SceneContext


@pytest.fixture
def intr640():
    return Intrinsics(fx=400.0, fy=400.0, cx=320.0, cy=176.0, width=640, height=352)


def make_context(width=64, height=44, depth=None, mask=None, intrinsics=None):
    if depth is None:
        depth = np.full((height, width), 2.0)
    if mask is None:
        mask = np.zeros((height, width), dtype=np.int32)
    if intrinsics is None:
        intrinsics = Intrinsics(fx=80.0, fy=80.0, cx=width / 2.0, cy=height / 2.0,
                                width=width, height=height)
    return SceneContext(width=width, height=height, depth=depth,
                        moving_mask=mask, intrinsics0=intrinsics)


def wavy_depth(width, height, base=4.0, amplitude=1.5, seed=None):
    """Non-planar synthetic depth so DLT correspondences are non-degenerate."""
    v, u = np.mgrid[0:height, 0:width].astype(np.float64)
    grid = (base
            + amplitude * np.sin(2 * np.pi * u / width) * np.cos(2 * np.pi * v / height)
            + 0.5 * amplitude * np.sin(5.0 * u / width + 3.0 * v / height))
    if seed is not None:
        rng = np.random.default_rng(seed)
        grid = grid + 0.2 * rng.random((height, width))
    return grid


@pytest.fixture
def flat_ctx():
    return make_context()


@pytest.fixture
def wavy_ctx():
    return make_context(depth=wavy_depth(64, 44))
