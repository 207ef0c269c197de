/**
 * Preview panel: depth-warp preview frames from the service with the
 * translated signals overlaid (dashed scene boxes vs solid screen boxes,
 * colored track polylines). All overlay coordinates come from the service
 * response; this panel only scales them to the view.
 */
import { TranslateResponse } from "../api.js";
import { DesignDoc } from "../designSchema.js";
import { buildOverlay, paintOverlay } from "../overlay.js";

export class PreviewPanel {
  private canvas: HTMLCanvasElement;
  private ctx: CanvasRenderingContext2D;
  private frames = new Map<number, HTMLImageElement>();
  private response: TranslateResponse | null = null;
  private design: DesignDoc | null = null;
  private status: HTMLElement;
  frame = 0;
  zoom = 1.0;
  showCameraTracks = true;
  showSceneBoxes = true;

  constructor(root: HTMLElement, private baseUrl: string,
              width: number, height: number) {
    root.innerHTML = "<h2>Preview</h2>";
    this.status = document.createElement("div");
    this.status.className = "status";
    this.canvas = document.createElement("canvas");
    this.canvas.width = Math.round(width * this.zoom);
    this.canvas.height = Math.round(height * this.zoom);
    this.ctx = this.canvas.getContext("2d")!;

    const toggles = document.createElement("div");
    toggles.className = "preview-toggles";
    toggles.append(
      this.toggle("camera tracks", () => (v) => {
        this.showCameraTracks = v;
        this.redraw();
      }),
      this.toggle("scene boxes", () => (v) => {
        this.showSceneBoxes = v;
        this.redraw();
      }),
    );
    root.append(this.status, this.canvas, toggles);
  }

  private toggle(label: string, handler: () => (v: boolean) => void): HTMLElement {
    const wrap = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = true;
    box.addEventListener("change", () => handler()(box.checked));
    wrap.append(box, label);
    return wrap;
  }

  setStatus(text: string, isError = false): void {
    this.status.textContent = text;
    this.status.classList.toggle("error", isError);
  }

  setResult(design: DesignDoc, response: TranslateResponse): void {
    this.design = design;
    this.response = response;
    this.frames.clear();
    response.preview_frames.forEach((url, l) => {
      const img = new Image();
      img.onload = () => {
        if (l === this.frame) this.redraw();
      };
      img.src = this.baseUrl + url;
      this.frames.set(l, img);
    });
    const warn = response.warnings.length ? ` | ${response.warnings.join("; ")}` : "";
    this.setStatus(`translated ${response.tracks.length} tracks, `
      + `${response.boxes.length} boxes${warn}`);
    this.redraw();
  }

  setFrame(frame: number): void {
    this.frame = frame;
    this.redraw();
  }

  redraw(): void {
    const { width, height } = this.canvas;
    this.ctx.clearRect(0, 0, width, height);
    this.ctx.fillStyle = "#000";
    this.ctx.fillRect(0, 0, width, height);
    const img = this.frames.get(this.frame);
    if (img && img.complete && img.naturalWidth > 0) {
      this.ctx.drawImage(img, 0, 0, width, height);
    }
    if (this.response && this.design && this.frame < this.response.frame_count) {
      paintOverlay(this.ctx, buildOverlay(this.design, this.response, {
        zoom: this.zoom,
        frame: this.frame,
        showCameraTracks: this.showCameraTracks,
        showSceneBoxes: this.showSceneBoxes,
      }));
    }
  }
}
