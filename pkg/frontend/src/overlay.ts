/**
 * Overlay geometry for the preview canvas, produced verbatim from service
 * responses. Scene-space inputs draw dashed, translated screen-space signals
 * draw solid in the same color, and point tracks draw as colored polylines
 * with a dot at the current frame. No projection math happens here: every
 * screen coordinate is a service output scaled by the view zoom only.
 */
import { BoxTrackDoc, TrackDoc, TranslateResponse } from "./api.js";
import { DesignDoc } from "./designSchema.js";

export interface RectPrim {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  color: string;
  dashed: boolean;
}

export interface PolylinePrim {
  kind: "polyline";
  points: [number, number][];
  color: string;
  dashed: boolean;
}

export interface DotPrim {
  kind: "dot";
  x: number;
  y: number;
  color: string;
  r: number;
}

export type OverlayPrim = RectPrim | PolylinePrim | DotPrim;

/** Same golden-ratio palette the rasterizer uses (hue in degrees). */
export function objectColor(index: number): string {
  const hue = (((index + 1) * 0.618033988749895) % 1) * 360;
  return `hsl(${hue.toFixed(2)}, 100%, 50%)`;
}

const CAMERA_TRACK_COLOR = "#8ecae6";
const LOCAL_TRACK_COLOR = "#ffb703";

function rect(box: { cx: number; cy: number; w: number; h: number },
              zoom: number, color: string, dashed: boolean): RectPrim {
  return {
    kind: "rect",
    x: (box.cx - box.w / 2) * zoom,
    y: (box.cy - box.h / 2) * zoom,
    w: box.w * zoom,
    h: box.h * zoom,
    color, dashed,
  };
}

function trackPolyline(track: TrackDoc, zoom: number, upTo: number,
                       color: string): PolylinePrim {
  const points: [number, number][] = [];
  for (let l = 0; l <= upTo; l++) {
    if (track.visible[l]) {
      points.push([track.positions[l][0] * zoom, track.positions[l][1] * zoom]);
    }
  }
  return { kind: "polyline", points, color, dashed: false };
}

export interface OverlayOptions {
  zoom: number;
  frame: number;
  showCameraTracks: boolean;
  showSceneBoxes: boolean;
}

/** Draw list for one frame of the preview. */
export function buildOverlay(design: DesignDoc, response: TranslateResponse,
                             opts: OverlayOptions): OverlayPrim[] {
  const prims: OverlayPrim[] = [];
  const { zoom, frame } = opts;

  response.boxes.forEach((boxTrack: BoxTrackDoc, index: number) => {
    const color = objectColor(index);
    if (opts.showSceneBoxes) {
      const spec = design.objects.find((o) => o.id === boxTrack.id);
      for (const key of spec?.key_boxes ?? []) {
        prims.push(rect(key, zoom, color, true)); // dashed scene-space input
      }
    }
    prims.push(rect(boxTrack.boxes[frame], zoom, color, false)); // solid screen-space
  });

  response.tracks.forEach((track) => {
    if (track.kind === "camera" && !opts.showCameraTracks) return;
    const color = track.kind === "camera" ? CAMERA_TRACK_COLOR : LOCAL_TRACK_COLOR;
    const line = trackPolyline(track, zoom, frame, color);
    if (line.points.length > 1) prims.push(line);
    if (track.visible[frame]) {
      prims.push({
        kind: "dot",
        x: track.positions[frame][0] * zoom,
        y: track.positions[frame][1] * zoom,
        color,
        r: track.kind === "camera" ? 2 : 3.5,
      });
    }
  });
  return prims;
}

/** Stroke a draw list onto a 2D context. */
export function paintOverlay(ctx: CanvasRenderingContext2D,
                             prims: OverlayPrim[]): void {
  for (const prim of prims) {
    ctx.save();
    if (prim.kind === "rect") {
      ctx.setLineDash(prim.dashed ? [6, 4] : []);
      ctx.strokeStyle = prim.color;
      ctx.lineWidth = prim.dashed ? 1 : 2;
      ctx.strokeRect(prim.x, prim.y, prim.w, prim.h);
    } else if (prim.kind === "polyline") {
      ctx.setLineDash(prim.dashed ? [6, 4] : []);
      ctx.strokeStyle = prim.color;
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      prim.points.forEach(([x, y], i) => (i ? ctx.lineTo(x, y) : ctx.moveTo(x, y)));
      ctx.stroke();
    } else {
      ctx.fillStyle = prim.color;
      ctx.beginPath();
      ctx.arc(prim.x, prim.y, prim.r, 0, 2 * Math.PI);
      ctx.fill();
    }
    ctx.restore();
  }
}
