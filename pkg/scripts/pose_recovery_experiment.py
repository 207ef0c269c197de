#!/usr/bin/env python3
"""Round-trip pose recovery experiment: synthesize camera tracks for every
base pattern, recover per-frame poses with the linear DLT, and print the
rotation / translation / combined errors. All values should sit at numerical
noise; this is the analytic counterpart of the camera control metrics.

Usage: python scripts/pose_recovery_experiment.py [--frames 32] [--points 100]
"""
import argparse
import time

import numpy as np

from motionforge.campath import mix_patterns
from motionforge.metrics import camera_errors, recover_pose
from motionforge.types import PatternSpec, SceneContext, default_intrinsics
from motionforge.warp import synthesize_camera_tracks, unproject

CASES = [
    [PatternSpec("trucking", 0.3)],
    [PatternSpec("pedestal", -0.25)],
    [PatternSpec("dolly", 0.5)],
    [PatternSpec("pan", 0.12), PatternSpec("trucking", 0.2)],
    [PatternSpec("tilt", -0.1), PatternSpec("dolly", 0.3)],
    [PatternSpec("roll", 0.2), PatternSpec("pedestal", 0.2)],
    [PatternSpec("orbit", 0.25, radius=2.5)],
    [PatternSpec("circle", 0.8, radius=0.8)],
    [PatternSpec("zoom", 0.3), PatternSpec("dolly", -0.3)],
    [PatternSpec("trucking", 0.2), PatternSpec("pan", 0.08),
     PatternSpec("tilt", 0.05), PatternSpec("zoom", 0.15)],
]


def wavy_depth(width, height):
    v, u = np.mgrid[0:height, 0:width].astype(np.float64)
    return (4.0 + 1.5 * np.sin(2 * np.pi * u / width) * np.cos(2 * np.pi * v / height)
            + 0.7 * np.sin(5.0 * u / width + 3.0 * v / height))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frames", type=int, default=32)
    parser.add_argument("--points", type=int, default=100)
    parser.add_argument("--width", type=int, default=640)
    parser.add_argument("--height", type=int, default=352)
    args = parser.parse_args()

    ctx = SceneContext(args.width, args.height,
                       wavy_depth(args.width, args.height),
                       np.zeros((args.height, args.width), np.int32),
                       default_intrinsics(args.width, args.height))
    print(f"{'patterns':44s} {'RotErr':>12s} {'TransErr':>12s} {'CamMC':>12s} {'ms':>7s}")
    for specs in CASES:
        label = "+".join(f"{s.pattern}({s.magnitude:g})" for s in specs)
        t0 = time.perf_counter()
        path = mix_patterns(specs, args.frames, ctx.intrinsics0)
        tracks = synthesize_camera_tracks(ctx, path, args.points, seed=0)
        starts = np.stack([t.positions[0] for t in tracks])
        depths = np.array([ctx.depth[int(v), int(u)] for u, v in starts])
        world = unproject(starts, depths, ctx.intrinsics0)
        est = [recover_pose(world, np.stack([t.positions[l] for t in tracks]),
                            path.intrinsics(l))
               for l in range(args.frames)]
        rot, trans, cmc = camera_errors(path, est)
        ms = (time.perf_counter() - t0) * 1000
        print(f"{label:44s} {rot:12.3e} {trans:12.3e} {cmc:12.3e} {ms:7.1f}")


if __name__ == "__main__":
    main()
