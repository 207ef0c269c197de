"""Centripetal Catmull-Rom interpolation (Barry-Goldman pyramid).

Two knot flavors are used in this package:
  - point chords: knot spacing |P_{i+1} - P_i|^alpha (camera centers)
  - time chords:  knot spacing (t_{i+1} - t_i)^alpha (box coordinates)
Query times are mapped linearly into each segment's knot interval, so the
curve is parameterized by frame index between keys. End tangents are clamped
by reflecting the boundary points, which also preserves linear data on the
end segments.
"""
from __future__ import annotations

import numpy as np

ALPHA = 0.5


def _barry_goldman(p0, p1, p2, p3, t0, t1, t2, t3, t):
    """Evaluate one Catmull-Rom segment for t in [t1, t2]; t is (m,)."""
    t = t[:, None]

    a1 = ((t1 - t) * p0 + (t - t0) * p1) / (t1 - t0)
    a2 = ((t2 - t) * p1 + (t - t1) * p2) / (t2 - t1)
    a3 = ((t3 - t) * p2 + (t - t2) * p3) / (t3 - t2)
    b1 = ((t2 - t) * a1 + (t - t0) * a2) / (t2 - t0)
    b2 = ((t3 - t) * a2 + (t - t1) * a3) / (t3 - t1)
    return ((t2 - t) * b1 + (t - t1) * b2) / (t2 - t1)


def _knots_from_chords(chords):
    """Cumulative knots from per-segment chord lengths; zero chords fall back
    to a tiny positive spacing so coincident keys stay well defined."""
    chords = np.asarray(chords, dtype=np.float64)
    scale = chords.max() if chords.size else 0.0
    if scale <= 0.0:
        chords = np.ones_like(chords)
    else:
        chords = np.maximum(chords, 1e-6 * scale)
    knots = np.zeros(len(chords) + 1)
    knots[1:] = np.cumsum(chords)
    return knots


def catmull_rom(keys, key_times, query_times, *, knot_mode="points"):
    """Interpolate keys (n, d) given at key_times through query_times (m,).

    knot_mode "points": centripetal knots from key chord lengths.
    knot_mode "times": centripetal knots from key time gaps.
    Exact at the keys; linear data at uniform spacing reproduces linearly.
    """
    keys = np.atleast_2d(np.asarray(keys, dtype=np.float64))
    if keys.shape[0] < 2:
        raise ValueError("need at least two keys")
    key_times = np.asarray(key_times, dtype=np.float64)
    query_times = np.asarray(query_times, dtype=np.float64)
    if np.any(np.diff(key_times) <= 0):
        raise ValueError("key times must be strictly increasing")

    # clamped end tangents via reflected phantom points
    p = np.vstack([2 * keys[0] - keys[1], keys, 2 * keys[-1] - keys[-2]])

    if knot_mode == "points":
        chords = np.linalg.norm(np.diff(p, axis=0), axis=1) ** ALPHA
    elif knot_mode == "times":
        gaps = np.diff(key_times) ** ALPHA
        chords = np.concatenate([[gaps[0]], gaps, [gaps[-1]]])
    else:
        raise ValueError(f"unknown knot mode {knot_mode!r}")
    knots = _knots_from_chords(chords)

    out = np.empty((len(query_times), keys.shape[1]))
    seg = np.clip(np.searchsorted(key_times, query_times, side="right") - 1,
                  0, len(key_times) - 2)
    for i in range(len(key_times) - 1):
        sel = seg == i
        if not np.any(sel):
            continue
        frac = (query_times[sel] - key_times[i]) / (key_times[i + 1] - key_times[i])
        t = knots[i + 1] + frac * (knots[i + 2] - knots[i + 1])
        out[sel] = _barry_goldman(p[i], p[i + 1], p[i + 2], p[i + 3],
                                  knots[i], knots[i + 1], knots[i + 2], knots[i + 3], t)

    # keys are reproduced exactly, bit-for-bit, when queried at key times
    exact = np.searchsorted(key_times, query_times)
    hit = (exact < len(key_times)) & np.isclose(
        np.take(key_times, exact, mode="clip"), query_times, rtol=0, atol=0)
    if np.any(hit):
        out[hit] = keys[exact[hit]]
    return out
