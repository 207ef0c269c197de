/**
 * Editable design state with mutation helpers; panels mutate through these
 * and the app re-translates on every change. Building the document is pure,
 * so the exported JSON always reflects exactly what the panels show.
 */
import {
  DesignDoc, DepthMode, KeyBoxDoc, LocalTrackDoc, ObjectDoc, PatternEntry,
  PatternName, ReferencePointDoc, validateDesign,
} from "./designSchema.js";

export interface PatternRow {
  name: PatternName;
  magnitude: number;
  radius: number; // used only by orbit / circle
  enabled: boolean;
}

export interface DesignState {
  frameCount: number;
  fps: number;
  canvas: { width: number; height: number };
  patternRows: PatternRow[];
  objects: ObjectDoc[];
  localTracks: LocalTrackDoc[];
  textPrompt: string;
}

export const DEFAULT_MAGNITUDES: Record<PatternName, number> = {
  trucking: 0.3, pedestal: 0.3, dolly: 0.5, pan: 0.15, tilt: 0.1,
  roll: 0.2, zoom: 0.3, orbit: 0.25, circle: 0.5, static: 0,
};

export function initialState(width = 640, height = 352): DesignState {
  return {
    frameCount: 32,
    fps: 12,
    canvas: { width, height },
    patternRows: PATTERN_ROWS.map((name) => ({
      name, magnitude: DEFAULT_MAGNITUDES[name], radius: 2.0, enabled: false,
    })),
    objects: [],
    localTracks: [],
    textPrompt: "",
  };
}

const PATTERN_ROWS: PatternName[] = [
  "trucking", "pedestal", "dolly", "pan", "tilt", "roll",
  "zoom", "orbit", "circle", "static",
];

export function buildDesign(state: DesignState): DesignDoc {
  const patterns: PatternEntry[] = state.patternRows
    .filter((row) => row.enabled && (row.name === "static" || row.magnitude !== 0))
    .map((row) => row.name === "orbit" || row.name === "circle"
      ? [row.name, row.magnitude, row.radius]
      : [row.name, row.name === "static" ? 0 : row.magnitude]);
  if (patterns.length === 0) patterns.push(["static", 0]);
  return validateDesign({
    frame_count: state.frameCount,
    fps: state.fps,
    canvas: { ...state.canvas },
    camera: { patterns },
    objects: state.objects.map((o) => ({ ...o, key_boxes: [...o.key_boxes] })),
    local_tracks: state.localTracks.map((t) => ({ ...t, samples: [...t.samples] })),
    text_prompt: state.textPrompt,
  });
}

export function setPattern(state: DesignState, name: PatternName,
                           update: Partial<PatternRow>): void {
  const row = state.patternRows.find((r) => r.name === name);
  if (!row) throw new Error(`unknown pattern row ${name}`);
  Object.assign(row, update);
}

let nextObjectId = 1;

export function addObject(state: DesignState, box: KeyBoxDoc): ObjectDoc {
  while (state.objects.some((o) => o.id === nextObjectId)) nextObjectId++;
  const endBox: KeyBoxDoc = { ...box, frame: state.frameCount - 1 };
  const obj: ObjectDoc = {
    id: nextObjectId,
    depth_mode: "mask_mean",
    key_boxes: [{ ...box, frame: 0 }, endBox],
  };
  state.objects.push(obj);
  return obj;
}

export function setKeyBox(obj: ObjectDoc, frame: number, box: Omit<KeyBoxDoc, "frame">): void {
  const existing = obj.key_boxes.find((b) => b.frame === frame);
  if (existing) {
    Object.assign(existing, box);
  } else {
    obj.key_boxes.push({ frame, ...box });
    obj.key_boxes.sort((a, b) => a.frame - b.frame);
  }
}

export function removeKeyBox(obj: ObjectDoc, frame: number): void {
  // the first and last key boxes are structural; only middles are removable
  const frames = obj.key_boxes.map((b) => b.frame);
  if (frame === frames[0] || frame === frames[frames.length - 1]) return;
  obj.key_boxes = obj.key_boxes.filter((b) => b.frame !== frame);
}

export function setDepthMode(obj: ObjectDoc, mode: DepthMode,
                             referencePoints?: ReferencePointDoc[]): void {
  obj.depth_mode = mode;
  if (mode === "reference_point") {
    obj.reference_points = referencePoints ?? obj.reference_points ?? [];
  } else {
    delete obj.reference_points;
  }
}

export function removeObject(state: DesignState, id: number): void {
  state.objects = state.objects.filter((o) => o.id !== id);
  state.localTracks = state.localTracks.filter((t) => t.parent !== id);
}

export function addLocalTrack(state: DesignState, samples: LocalTrackDoc["samples"],
                              parent?: number): LocalTrackDoc {
  const track: LocalTrackDoc = parent === undefined ? { samples } : { parent, samples };
  state.localTracks.push(track);
  return track;
}

export function setFrameCount(state: DesignState, frameCount: number): void {
  const old = state.frameCount;
  state.frameCount = frameCount;
  // keep end keys pinned to the new last frame
  for (const obj of state.objects) {
    for (const box of obj.key_boxes) {
      if (box.frame === old - 1) box.frame = frameCount - 1;
      else if (box.frame > frameCount - 1) box.frame = frameCount - 1;
    }
    obj.key_boxes = dedupeByFrame(obj.key_boxes);
    for (const ref of obj.reference_points ?? []) {
      if (ref.frame > frameCount - 1) ref.frame = frameCount - 1;
    }
    if (obj.reference_points) obj.reference_points = dedupeByFrame(obj.reference_points);
  }
  for (const track of state.localTracks) {
    for (const sample of track.samples) {
      if (sample.frame > frameCount - 1) sample.frame = frameCount - 1;
    }
    track.samples = dedupeByFrame(track.samples);
  }
}

function dedupeByFrame<T extends { frame: number }>(items: T[]): T[] {
  const seen = new Map<number, T>();
  for (const item of items) seen.set(item.frame, item);
  return [...seen.values()].sort((a, b) => a.frame - b.frame);
}
