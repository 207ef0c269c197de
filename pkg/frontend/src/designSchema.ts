/**
 * Motion design document model: the JSON contract shared with the service.
 * Validation mirrors the service-side schema so a design is rejected locally
 * with the same JSON paths the server would report.
 */

export const PATTERN_NAMES = [
  "trucking", "pedestal", "dolly", "pan", "tilt", "roll",
  "zoom", "orbit", "circle", "static",
] as const;

export type PatternName = (typeof PATTERN_NAMES)[number];

export type PatternEntry = [PatternName, number] | [PatternName, number, number];

export interface CameraKeyframeDoc {
  frame: number;
  rotation: number[]; // 9 numbers, row-major
  translation: number[]; // 3 numbers
  focal_scale: number;
}

export type DepthMode = "mask_mean" | "reference_point" | "perspective";

export interface KeyBoxDoc {
  frame: number;
  cx: number;
  cy: number;
  w: number;
  h: number;
}

export interface ReferencePointDoc {
  frame: number;
  x: number;
  y: number;
}

export interface ObjectDoc {
  id: number;
  depth_mode: DepthMode;
  reference_points?: ReferencePointDoc[];
  key_boxes: KeyBoxDoc[];
}

export interface SampleDoc {
  frame: number;
  x: number;
  y: number;
}

export interface LocalTrackDoc {
  parent?: number;
  samples: SampleDoc[];
}

export interface DesignDoc {
  frame_count: number;
  fps: number;
  canvas: { width: number; height: number };
  intrinsics?: { fx: number; fy: number; cx: number; cy: number };
  camera: { patterns: PatternEntry[] } | { keyframes: CameraKeyframeDoc[] };
  objects: ObjectDoc[];
  local_tracks: LocalTrackDoc[];
  text_prompt: string;
}

export class DesignValidationError extends Error {
  constructor(public path: string, message: string) {
    super(`${path}: ${message}`);
  }
}

function fail(path: string, message: string): never {
  throw new DesignValidationError(path, message);
}

function requireNumber(value: unknown, path: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    fail(path, "expected a finite number");
  }
  return value;
}

function requireInt(value: unknown, path: string): number {
  const num = requireNumber(value, path);
  if (!Number.isInteger(num)) fail(path, "expected an integer");
  return num;
}

function requireIncreasing(frames: number[], path: string): void {
  for (let i = 1; i < frames.length; i++) {
    if (frames[i] <= frames[i - 1]) fail(path, "key frames not increasing");
  }
}

/** Validate a design document; throws DesignValidationError with a JSON path. */
export function validateDesign(doc: DesignDoc): DesignDoc {
  const L = requireInt(doc.frame_count, "$.frame_count");
  if (L < 2) fail("$.frame_count", "must be at least 2");
  if (requireInt(doc.fps, "$.fps") <= 0) fail("$.fps", "must be positive");
  const width = requireInt(doc.canvas?.width, "$.canvas.width");
  const height = requireInt(doc.canvas?.height, "$.canvas.height");

  const camera = doc.camera as Record<string, unknown>;
  const hasPatterns = "patterns" in camera;
  const hasKeyframes = "keyframes" in camera;
  if (hasPatterns === hasKeyframes) {
    fail("$.camera", "exactly one of patterns or keyframes required");
  }
  if (hasPatterns) {
    const patterns = camera.patterns as PatternEntry[];
    patterns.forEach((entry, i) => {
      const path = `$.camera.patterns[${i}]`;
      const [name, magnitude, radius] = entry;
      if (!PATTERN_NAMES.includes(name)) fail(path, `unknown pattern ${name}`);
      requireNumber(magnitude, `${path}[1]`);
      const needsRadius = name === "orbit" || name === "circle";
      if (needsRadius && (radius === undefined || radius <= 0)) {
        fail(path, `${name} requires a positive radius`);
      }
      if (!needsRadius && radius !== undefined) fail(path, `${name} takes no radius`);
      if (name === "static" ? magnitude !== 0 : magnitude === 0) {
        fail(path, "magnitude 0 is reserved for static");
      }
    });
  } else {
    const keys = camera.keyframes as CameraKeyframeDoc[];
    if (keys.length < 2) fail("$.camera.keyframes", "need at least two keyframes");
    requireIncreasing(keys.map((k) => k.frame), "$.camera.keyframes");
    if (keys[0].frame !== 0 || keys[keys.length - 1].frame !== L - 1) {
      fail("$.camera.keyframes", "keys must span frames 0 to frame_count-1");
    }
    keys.forEach((k, i) => {
      if (k.rotation.length !== 9) fail(`$.camera.keyframes[${i}].rotation`, "expected 9 numbers");
      if (k.translation.length !== 3) fail(`$.camera.keyframes[${i}].translation`, "expected 3 numbers");
    });
  }

  const ids = new Set<number>();
  doc.objects.forEach((obj, i) => {
    const path = `$.objects[${i}]`;
    requireInt(obj.id, `${path}.id`);
    if (ids.has(obj.id)) fail(`${path}.id`, `duplicate object id ${obj.id}`);
    ids.add(obj.id);
    if (obj.key_boxes.length < 2) fail(`${path}.key_boxes`, "need start and end boxes");
    requireIncreasing(obj.key_boxes.map((b) => b.frame), `${path}.key_boxes`);
    const frames = obj.key_boxes.map((b) => b.frame);
    if (frames[0] !== 0 || frames[frames.length - 1] !== L - 1) {
      fail(`${path}.key_boxes`, "boxes must span frames 0 to frame_count-1");
    }
    obj.key_boxes.forEach((b, j) => {
      const bpath = `${path}.key_boxes[${j}]`;
      if (requireNumber(b.w, `${bpath}.w`) <= 0 || requireNumber(b.h, `${bpath}.h`) <= 0) {
        fail(bpath, "box size must be positive");
      }
      // the canvas bound allows a 50% margin for exits and entries
      if (b.cx - b.w / 2 < -0.5 * width || b.cx + b.w / 2 > 1.5 * width ||
          b.cy - b.h / 2 < -0.5 * height || b.cy + b.h / 2 > 1.5 * height) {
        fail(bpath, "box outside the expanded canvas bound");
      }
    });
    if (obj.depth_mode === "reference_point" &&
        (obj.reference_points ?? []).length < 1) {
      fail(`${path}.reference_points`, "reference_point mode needs at least one point");
    }
  });

  doc.local_tracks.forEach((track, i) => {
    const path = `$.local_tracks[${i}]`;
    if (track.samples.length < 2) fail(`${path}.samples`, "need at least two samples");
    requireIncreasing(track.samples.map((s) => s.frame), `${path}.samples`);
    if (track.samples[0].frame !== 0) fail(`${path}.samples`, "first sample must be at frame 0");
    if (track.samples[track.samples.length - 1].frame > L - 1) {
      fail(`${path}.samples`, "sample frame beyond frame_count-1");
    }
    if (track.parent !== undefined) {
      const parent = doc.objects.find((o) => o.id === track.parent);
      if (!parent) fail(`${path}.parent`, `object ${track.parent} is not declared`);
      const box0 = parent.key_boxes[0];
      const { x, y } = track.samples[0];
      if (Math.abs(x - box0.cx) > box0.w / 2 || Math.abs(y - box0.cy) > box0.h / 2) {
        fail(`${path}.samples[0]`, "must start inside the parent's frame-0 box");
      }
    }
  });
  return doc;
}

/** Deterministic serialization used for requests and export comparisons. */
export function serializeDesign(doc: DesignDoc): string {
  return JSON.stringify(validateDesign(doc));
}
