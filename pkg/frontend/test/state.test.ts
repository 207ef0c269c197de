import { describe, expect, it } from "vitest";

import {
  addLocalTrack, addObject, buildDesign, initialState, removeObject,
  setDepthMode, setFrameCount, setKeyBox, setPattern,
} from "../src/state.js";

describe("design state", () => {
  it("builds a static design when nothing is enabled", () => {
    const design = buildDesign(initialState());
    expect(design.camera).toEqual({ patterns: [["static", 0]] });
    expect(design.frame_count).toBe(32);
  });

  it("collects enabled patterns with radius where needed", () => {
    const state = initialState();
    setPattern(state, "dolly", { enabled: true, magnitude: 0.5 });
    setPattern(state, "orbit", { enabled: true, magnitude: -0.25, radius: 3.0 });
    const design = buildDesign(state);
    expect(design.camera).toEqual({
      patterns: [["dolly", 0.5], ["orbit", -0.25, 3.0]],
    });
  });

  it("creates objects with start and end boxes pinned to the timeline", () => {
    const state = initialState();
    const obj = addObject(state, { frame: 0, cx: 100, cy: 100, w: 40, h: 30 });
    expect(obj.key_boxes.map((b) => b.frame)).toEqual([0, 31]);
    setKeyBox(obj, 31, { cx: 300, cy: 120, w: 40, h: 30 });
    setKeyBox(obj, 10, { cx: 180, cy: 110, w: 40, h: 30 });
    const design = buildDesign(state);
    expect(design.objects[0].key_boxes.map((b) => b.frame)).toEqual([0, 10, 31]);
  });

  it("switching depth mode manages reference points", () => {
    const state = initialState();
    const obj = addObject(state, { frame: 0, cx: 100, cy: 100, w: 40, h: 30 });
    setDepthMode(obj, "reference_point", [{ frame: 0, x: 5, y: 340 }]);
    expect(buildDesign(state).objects[0].reference_points).toHaveLength(1);
    setDepthMode(obj, "perspective");
    expect(buildDesign(state).objects[0].reference_points).toBeUndefined();
  });

  it("rescales key frames when the frame count changes", () => {
    const state = initialState();
    const obj = addObject(state, { frame: 0, cx: 100, cy: 100, w: 40, h: 30 });
    setKeyBox(obj, 20, { cx: 200, cy: 100, w: 40, h: 30 });
    addLocalTrack(state, [{ frame: 0, x: 100, y: 100 }, { frame: 31, x: 120, y: 100 }],
                  obj.id);
    setFrameCount(state, 16);
    const design = buildDesign(state);
    expect(design.frame_count).toBe(16);
    const frames = design.objects[0].key_boxes.map((b) => b.frame);
    expect(frames[0]).toBe(0);
    expect(frames[frames.length - 1]).toBe(15);
    expect(Math.max(...design.local_tracks[0].samples.map((s) => s.frame))).toBe(15);
  });

  it("removing an object drops its parented tracks", () => {
    const state = initialState();
    const obj = addObject(state, { frame: 0, cx: 100, cy: 100, w: 40, h: 30 });
    addLocalTrack(state, [{ frame: 0, x: 100, y: 100 }, { frame: 31, x: 110, y: 100 }],
                  obj.id);
    addLocalTrack(state, [{ frame: 0, x: 10, y: 10 }, { frame: 31, x: 20, y: 10 }]);
    removeObject(state, obj.id);
    const design = buildDesign(state);
    expect(design.objects).toHaveLength(0);
    expect(design.local_tracks).toHaveLength(1);
    expect(design.local_tracks[0].parent).toBeUndefined();
  });
});
