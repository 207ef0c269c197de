"""Batch entry points: translate, preview, chain, verify.

Exit codes: 0 success, 2 design/validation problems, 1 IO problems.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io as mfio
from .chaining import DEFAULT_CHUNK_LEN, DEFAULT_OVERLAP, chain_chunks
from .errors import FormatError, MotionForgeError, SchemaError, ValidationError
from .metrics import verify_report
from .pipeline import DEFAULT_POINTS, build_camera_path, translate_design
from .types import SceneContext, default_intrinsics
from .warp import render_preview


def _add_scene_args(parser, image_required=False):
    parser.add_argument("--design", required=True, help="motion design JSON")
    parser.add_argument("--depth", required=True, help="depth raster (PFM or PNG16 + .scale)")
    parser.add_argument("--masks", help="object label mask PNG (default: all static)")
    parser.add_argument("--image", required=image_required,
                        help="input RGB image (required for previews)")


def _add_translate_args(parser, image_required=False):
    _add_scene_args(parser, image_required)
    parser.add_argument("--out", required=True, help="output bundle directory")
    parser.add_argument("--points", type=int, default=DEFAULT_POINTS,
                        help="number of camera track points (default 100)")
    parser.add_argument("--seed", type=int, default=0, help="sampling seed")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="motionforge",
        description="Translate scene-space motion designs into screen-space "
                    "conditioning signals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", help="write a signal bundle for a design")
    _add_translate_args(p)

    p = sub.add_parser("preview", help="translate plus depth-warped preview frames")
    _add_translate_args(p, image_required=True)

    p = sub.add_parser("chain", help="write per-chunk bundles for autoregressive use")
    _add_translate_args(p)
    p.add_argument("--chunk-len", type=int, default=DEFAULT_CHUNK_LEN)
    p.add_argument("--overlap", type=int, default=DEFAULT_OVERLAP)

    p = sub.add_parser("verify", help="round-trip metrics for a stored bundle")
    p.add_argument("--bundle", required=True, help="bundle directory from translate")
    p.add_argument("--design", required=True)
    p.add_argument("--depth", required=True)
    p.add_argument("--masks")
    return parser


def _load_scene(args, design):
    depth = mfio.load_depth(args.depth)
    height, width = depth.shape
    if args.masks:
        mask = mfio.load_mask(args.masks)
    else:
        mask = np.zeros((height, width), dtype=np.int32)
    intrinsics = design.intrinsics or default_intrinsics(width, height)
    return SceneContext(width=width, height=height, depth=depth,
                        moving_mask=mask, intrinsics0=intrinsics)


def _run_translate(args, with_preview=False):
    design = mfio.parse_design(Path(args.design).read_text())
    ctx = _load_scene(args, design)
    path, bundle = translate_design(design, ctx, n_points=args.points,
                                    seed=args.seed)
    out = Path(args.out)
    mfio.write_bundle(bundle, out)
    if with_preview:
        image = mfio.load_image(args.image)
        frames = render_preview(image, ctx, path)
        mfio.write_frames(frames, out / "preview")
    return 0


def _run_chain(args):
    design = mfio.parse_design(Path(args.design).read_text())
    ctx = _load_scene(args, design)
    plan = chain_chunks(design, ctx, args.chunk_len, args.overlap,
                        n_points=args.points, seed=args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, chunk in enumerate(plan.chunks):
        mfio.write_bundle(chunk.bundle, out / f"chunk_{i:03d}")
    manifest = {"chunk_len": plan.chunk_len, "overlap": plan.overlap,
                "starts": plan.starts}
    (out / "chain_manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True))
    return 0


def _run_verify(args):
    design = mfio.parse_design(Path(args.design).read_text())
    ctx = _load_scene(args, design)
    bundle = mfio.read_bundle(args.bundle)
    report = verify_report(design, ctx, bundle)
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "translate":
            return _run_translate(args)
        if args.command == "preview":
            return _run_translate(args, with_preview=True)
        if args.command == "chain":
            return _run_chain(args)
        if args.command == "verify":
            return _run_verify(args)
        raise AssertionError(f"unhandled command {args.command}")
    except (SchemaError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MotionForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
