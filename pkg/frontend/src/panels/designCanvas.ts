/**
 * Annotated canvas over the input image. Three tools:
 *  - "box": drag to place/resize the selected object's key box at the
 *    current timeline frame (frame 0 and the last frame always exist);
 *  - "track": click to append timed polyline vertices for a local track,
 *    double-click to finish;
 *  - "refpoint": click to drop a reference-depth point at the current frame.
 * Scene-space annotations only; translated signals are drawn by the preview.
 */
import { KeyBoxDoc, ObjectDoc } from "../designSchema.js";
import { objectColor } from "../overlay.js";
import {
  addLocalTrack, addObject, DesignState, setKeyBox,
} from "../state.js";

export type Tool = "box" | "track" | "refpoint";

export class DesignCanvasPanel {
  private canvas: HTMLCanvasElement;
  private ctx: CanvasRenderingContext2D;
  private image: HTMLImageElement | null = null;
  private dragStart: [number, number] | null = null;
  private dragBox: KeyBoxDoc | null = null;
  private pendingTrack: { frame: number; x: number; y: number }[] = [];
  tool: Tool = "box";
  selectedObject: number | null = null;
  trackParent: number | null = null;
  zoom = 1.0;
  currentFrame = 0;

  constructor(root: HTMLElement, private state: DesignState,
              private onChange: () => void) {
    this.canvas = document.createElement("canvas");
    this.canvas.className = "design-canvas";
    this.ctx = this.canvas.getContext("2d")!;
    root.append(this.canvas);
    this.canvas.addEventListener("mousedown", (e) => this.onDown(e));
    this.canvas.addEventListener("mousemove", (e) => this.onMove(e));
    this.canvas.addEventListener("mouseup", (e) => this.onUp(e));
    this.canvas.addEventListener("dblclick", () => this.finishTrack());
    this.resize();
  }

  setImage(url: string): void {
    const img = new Image();
    img.onload = () => {
      this.image = img;
      this.redraw();
    };
    img.src = url;
  }

  resize(): void {
    this.canvas.width = Math.round(this.state.canvas.width * this.zoom);
    this.canvas.height = Math.round(this.state.canvas.height * this.zoom);
    this.redraw();
  }

  private pos(e: MouseEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    return [(e.clientX - rect.left) / this.zoom, (e.clientY - rect.top) / this.zoom];
  }

  private onDown(e: MouseEvent): void {
    const [x, y] = this.pos(e);
    if (this.tool === "box") {
      this.dragStart = [x, y];
      this.dragBox = null;
    } else if (this.tool === "track") {
      this.pendingTrack.push({ frame: this.currentFrame, x, y });
      this.redraw();
    } else if (this.tool === "refpoint") {
      const obj = this.selected();
      if (obj) {
        obj.depth_mode = "reference_point";
        const refs = obj.reference_points ?? [];
        const existing = refs.find((r) => r.frame === this.currentFrame);
        if (existing) {
          existing.x = x;
          existing.y = y;
        } else {
          refs.push({ frame: this.currentFrame, x, y });
          refs.sort((a, b) => a.frame - b.frame);
        }
        obj.reference_points = refs;
        this.onChange();
      }
    }
  }

  private onMove(e: MouseEvent): void {
    if (this.tool !== "box" || !this.dragStart) return;
    const [x, y] = this.pos(e);
    const [x0, y0] = this.dragStart;
    this.dragBox = {
      frame: this.currentFrame,
      cx: (x0 + x) / 2, cy: (y0 + y) / 2,
      w: Math.max(Math.abs(x - x0), 2), h: Math.max(Math.abs(y - y0), 2),
    };
    this.redraw();
  }

  private onUp(_e: MouseEvent): void {
    if (this.tool !== "box" || !this.dragBox) {
      this.dragStart = null;
      return;
    }
    const box = this.dragBox;
    this.dragStart = null;
    this.dragBox = null;
    const obj = this.selected();
    if (obj) {
      setKeyBox(obj, this.currentFrame, {
        cx: box.cx, cy: box.cy, w: box.w, h: box.h,
      });
    } else {
      const created = addObject(this.state, { ...box, frame: 0 });
      this.selectedObject = created.id;
    }
    this.onChange();
  }

  private finishTrack(): void {
    if (this.pendingTrack.length >= 2) {
      const samples = this.pendingTrack.map((s) => ({ ...s }));
      samples[0].frame = 0; // local tracks are anchored at frame 0
      addLocalTrack(this.state, samples,
                    this.trackParent === null ? undefined : this.trackParent);
      this.onChange();
    }
    this.pendingTrack = [];
    this.redraw();
  }

  private selected(): ObjectDoc | undefined {
    return this.state.objects.find((o) => o.id === this.selectedObject);
  }

  redraw(): void {
    const { width, height } = this.canvas;
    this.ctx.clearRect(0, 0, width, height);
    if (this.image) {
      this.ctx.drawImage(this.image, 0, 0, width, height);
    } else {
      this.ctx.fillStyle = "#1d2430";
      this.ctx.fillRect(0, 0, width, height);
    }
    const z = this.zoom;
    this.state.objects.forEach((obj, index) => {
      this.ctx.strokeStyle = objectColor(index);
      this.ctx.setLineDash([6, 4]);
      this.ctx.lineWidth = obj.id === this.selectedObject ? 2 : 1;
      for (const b of obj.key_boxes) {
        this.ctx.strokeRect((b.cx - b.w / 2) * z, (b.cy - b.h / 2) * z,
                            b.w * z, b.h * z);
      }
      this.ctx.setLineDash([]);
      for (const r of obj.reference_points ?? []) {
        this.ctx.beginPath();
        this.ctx.arc(r.x * z, r.y * z, 3, 0, 2 * Math.PI);
        this.ctx.stroke();
      }
    });
    this.ctx.strokeStyle = "#ffffff";
    for (const track of this.state.localTracks) {
      this.polyline(track.samples.map((s) => [s.x * z, s.y * z]));
    }
    if (this.pendingTrack.length > 0) {
      this.ctx.strokeStyle = "#ffd166";
      this.polyline(this.pendingTrack.map((s) => [s.x * z, s.y * z]));
    }
    if (this.dragBox) {
      const b = this.dragBox;
      this.ctx.strokeStyle = "#ffd166";
      this.ctx.strokeRect((b.cx - b.w / 2) * z, (b.cy - b.h / 2) * z,
                          b.w * z, b.h * z);
    }
  }

  private polyline(points: [number, number][]): void {
    if (points.length === 0) return;
    this.ctx.beginPath();
    points.forEach(([x, y], i) => (i ? this.ctx.lineTo(x, y) : this.ctx.moveTo(x, y)));
    this.ctx.stroke();
    for (const [x, y] of points) {
      this.ctx.beginPath();
      this.ctx.arc(x, y, 2.5, 0, 2 * Math.PI);
      this.ctx.stroke();
    }
  }
}
