import numpy as np
import pytest

from motionforge.spline import catmull_rom


def reference_segment(p, knots, t):
    """Textbook Barry-Goldman pyramid, scalar loops, for one segment."""
    t0, t1, t2, t3 = knots
    p0, p1, p2, p3 = p
    a1 = (t1 - t) / (t1 - t0) * p0 + (t - t0) / (t1 - t0) * p1
    a2 = (t2 - t) / (t2 - t1) * p1 + (t - t1) / (t2 - t1) * p2
    a3 = (t3 - t) / (t3 - t2) * p2 + (t - t2) / (t3 - t2) * p3
    b1 = (t2 - t) / (t2 - t0) * a1 + (t - t0) / (t2 - t0) * a2
    b2 = (t3 - t) / (t3 - t1) * a2 + (t - t1) / (t3 - t1) * a3
    return (t2 - t) / (t2 - t1) * b1 + (t - t1) / (t2 - t1) * b2


def test_exact_at_keys():
    keys = np.array([[0.0, 1.0], [3.0, -2.0], [7.0, 5.0], [2.0, 2.0]])
    times = np.array([0.0, 2.0, 5.0, 9.0])
    out = catmull_rom(keys, times, times)
    assert np.array_equal(out, keys)


def test_two_keys_is_linear():
    keys = np.array([[100.0], [200.0]])
    out = catmull_rom(keys, [0.0, 10.0], np.arange(11.0))
    np.testing.assert_allclose(out[:, 0], 100.0 + 10.0 * np.arange(11.0), atol=1e-9)


def test_linear_reproduction_three_keys():
    # equally spaced collinear keys reproduce the line at every grid point
    keys = np.array([[100.0], [150.0], [200.0]])
    grid = np.linspace(0.0, 10.0, 41)
    out = catmull_rom(keys, [0.0, 5.0, 10.0], grid)
    np.testing.assert_allclose(out[:, 0], 100.0 + 10.0 * grid, atol=1e-9)


def test_matches_reference_pyramid_interior_segment():
    # independent scalar implementation of the same definition, middle segment
    keys = np.array([[0.0], [4.0], [3.0], [10.0]])
    times = np.array([0.0, 1.0, 2.0, 3.0])
    chords = np.abs(np.diff(np.concatenate([[2 * keys[0, 0] - keys[1, 0]],
                                            keys[:, 0],
                                            [2 * keys[-1, 0] - keys[-2, 0]]]))) ** 0.5
    knots = np.concatenate([[0.0], np.cumsum(chords)])
    query = np.array([1.25, 1.5, 1.75])
    out = catmull_rom(keys, times, query, knot_mode="points")
    p = [2 * keys[0, 0] - keys[1, 0], keys[0, 0], keys[1, 0], keys[2, 0], keys[3, 0],
         2 * keys[-1, 0] - keys[-2, 0]]
    for q, got in zip(query, out[:, 0]):
        # segment between keys 1 and 2 uses pyramid points p[1..4], knots[1..4]
        t = knots[2] + (q - 1.0) * (knots[3] - knots[2])
        expect = reference_segment(p[1:5], knots[1:5], t)
        assert got == pytest.approx(expect, abs=1e-12)


def test_zero_chord_fallback_constant_keys():
    keys = np.array([[5.0, 5.0], [5.0, 5.0], [5.0, 5.0]])
    out = catmull_rom(keys, [0.0, 3.0, 6.0], np.linspace(0, 6, 13))
    np.testing.assert_allclose(out, 5.0, atol=1e-12)


def test_time_knots_mode_linear_reproduction():
    keys = np.array([[1.0], [3.0], [5.0], [7.0]])
    grid = np.linspace(0.0, 9.0, 31)
    out = catmull_rom(keys, [0.0, 3.0, 6.0, 9.0], grid, knot_mode="times")
    np.testing.assert_allclose(out[:, 0], 1.0 + (6.0 / 9.0) * grid, atol=1e-9)


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        catmull_rom(np.array([[1.0]]), [0.0], [0.0])
    with pytest.raises(ValueError):
        catmull_rom(np.array([[1.0], [2.0]]), [0.0, 0.0], [0.0])
    with pytest.raises(ValueError):
        catmull_rom(np.array([[1.0], [2.0]]), [0.0, 1.0], [0.5], knot_mode="bogus")
