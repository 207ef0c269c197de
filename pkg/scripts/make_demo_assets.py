#!/usr/bin/env python3
"""Build a synthetic demo scene (image, depth PFM, mask PNG) plus three
example motion designs under demo/, ready for the CLI and the web UI.

Usage: python scripts/make_demo_assets.py [--out demo] [--width 640] [--height 352]
"""
import argparse
import json
from pathlib import Path

import numpy as np
from PIL import Image

from motionforge.io import write_pfm


def synth_scene(width, height):
    v, u = np.mgrid[0:height, 0:width].astype(np.float64)
    # a "ground plane" rising toward the horizon plus two box-shaped objects
    depth = 3.0 + 6.0 * (1.0 - v / height) + 0.6 * np.sin(2 * np.pi * u / width)
    mask = np.zeros((height, width), dtype=np.uint8)

    image = np.zeros((height, width, 3), dtype=np.uint8)
    image[..., 0] = (120 + 80 * np.sin(2 * np.pi * u / 97)).astype(np.uint8)
    image[..., 1] = (110 + 70 * np.cos(2 * np.pi * v / 61)).astype(np.uint8)
    image[..., 2] = (90 + 60 * np.sin(2 * np.pi * (u + v) / 131)).astype(np.uint8)

    def place_object(label, cx, cy, w, h, obj_depth, color):
        top, bottom = int(cy - h / 2), int(cy + h / 2)
        left, right = int(cx - w / 2), int(cx + w / 2)
        mask[top:bottom, left:right] = label
        depth[top:bottom, left:right] = obj_depth
        image[top:bottom, left:right] = color

    place_object(1, width * 0.3, height * 0.55, width * 0.12, height * 0.25,
                 4.0, (220, 90, 60))
    place_object(2, width * 0.7, height * 0.5, width * 0.10, height * 0.20,
                 5.5, (70, 140, 220))
    return image, depth, mask


def demo_designs(width, height, frames=32, fps=12):
    obj1 = {"id": 1, "depth_mode": "mask_mean", "key_boxes": [
        {"frame": 0, "cx": width * 0.3, "cy": height * 0.55,
         "w": width * 0.12, "h": height * 0.25},
        {"frame": frames - 1, "cx": width * 0.55, "cy": height * 0.55,
         "w": width * 0.12, "h": height * 0.25}]}
    local = {"parent": 1, "samples": [
        {"frame": 0, "x": width * 0.3, "y": height * 0.5},
        {"frame": frames // 2, "x": width * 0.32, "y": height * 0.45},
        {"frame": frames - 1, "x": width * 0.3, "y": height * 0.5}]}
    base = {"frame_count": frames, "fps": fps,
            "canvas": {"width": width, "height": height}}
    return {
        "design_static.json": {**base, "camera": {"patterns": [["static", 0]]},
                               "objects": [], "local_tracks": [],
                               "text_prompt": "static camera"},
        "design_dolly_box.json": {**base,
                                  "camera": {"patterns": [["dolly", 0.8]]},
                                  "objects": [obj1], "local_tracks": [],
                                  "text_prompt": "dolly in while the crate slides"},
        "design_pan_local.json": {**base,
                                  "camera": {"patterns": [["pan", 0.12],
                                                          ["trucking", 0.3]]},
                                  "objects": [obj1], "local_tracks": [local],
                                  "text_prompt": "pan with a waving crate"},
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo")
    parser.add_argument("--width", type=int, default=640)
    parser.add_argument("--height", type=int, default=352)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    image, depth, mask = synth_scene(args.width, args.height)
    Image.fromarray(image).save(out / "image.png")
    write_pfm(depth.astype(np.float32), out / "depth.pfm")
    Image.fromarray(mask).save(out / "mask.png")
    for name, doc in demo_designs(args.width, args.height).items():
        (out / name).write_text(json.dumps(doc, indent=2))
    print(f"wrote demo scene and designs to {out}/")
    print("try: motionforge translate --design demo/design_dolly_box.json "
          "--depth demo/depth.pfm --masks demo/mask.png --out demo/bundle")


if __name__ == "__main__":
    main()
