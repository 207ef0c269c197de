/**
 * Shot designer app: upload scene assets, edit the motion design, and watch
 * the translated screen-space signals over the depth-warp preview. Every
 * edit re-requests a translate (debounced, latest-wins); the UI itself does
 * no geometry.
 */
import { ShotServiceClient, TranslateResponse } from "./api.js";
import { buildDesign, DesignState, initialState } from "./state.js";
import { TranslateScheduler } from "./scheduler.js";
import { CameraMixerPanel } from "./panels/cameraMixer.js";
import { DesignCanvasPanel } from "./panels/designCanvas.js";
import { InspectorPanel } from "./panels/inspector.js";
import { PreviewPanel } from "./panels/previewPanel.js";
import { TimelinePanel } from "./panels/timeline.js";

const SERVICE_URL = (window as { MOTIONFORGE_SERVICE?: string }).MOTIONFORGE_SERVICE
  ?? "http://127.0.0.1:8787";

class App {
  client = new ShotServiceClient(SERVICE_URL);
  state: DesignState = initialState();
  sessionId: string | null = null;
  preview!: PreviewPanel;
  designCanvas!: DesignCanvasPanel;
  inspector!: InspectorPanel;
  timeline!: TimelinePanel;
  lastResponse: TranslateResponse | null = null;
  scheduler = new TranslateScheduler<TranslateResponse>(
    (response) => this.onTranslated(response),
    (err) => this.preview.setStatus(String(err), true),
  );

  mount(root: HTMLElement): void {
    root.innerHTML = `
      <header>
        <h1>motionforge shot designer</h1>
        <form id="upload">
          <label>image <input type="file" name="image" accept=".png" required></label>
          <label>depth <input type="file" name="depth" accept=".pfm,.png" required></label>
          <label>masks <input type="file" name="masks" accept=".png"></label>
          <label>depth scale <input type="number" name="depth_scale" step="any"
                 placeholder="PNG16 only"></label>
          <button type="submit">Start session</button>
        </form>
        <div class="actions">
          <button id="export" disabled>Export bundle (zip)</button>
          <button id="verify" disabled>Verify</button>
          <span id="metrics"></span>
        </div>
      </header>
      <main>
        <aside id="camera-panel" class="panel"></aside>
        <section class="center">
          <div id="canvas-panel" class="panel"><h2>Design canvas</h2></div>
          <div id="timeline-panel" class="panel"></div>
        </section>
        <section class="right">
          <div id="preview-panel" class="panel"></div>
          <div id="inspector-panel" class="panel"></div>
        </section>
      </main>`;

    this.preview = new PreviewPanel(root.querySelector("#preview-panel")!,
                                    SERVICE_URL, this.state.canvas.width,
                                    this.state.canvas.height);
    this.designCanvas = new DesignCanvasPanel(root.querySelector("#canvas-panel")!,
                                              this.state, () => this.edited());
    this.inspector = new InspectorPanel(root.querySelector("#inspector-panel")!,
                                        this.state, this.designCanvas,
                                        () => this.edited());
    this.timeline = new TimelinePanel(root.querySelector("#timeline-panel")!,
                                      this.state, () => this.edited(),
                                      (frame) => {
                                        this.designCanvas.currentFrame = frame;
                                        this.preview.setFrame(frame);
                                      });
    new CameraMixerPanel(root.querySelector("#camera-panel")!, this.state,
                         () => this.edited());

    root.querySelector<HTMLFormElement>("#upload")!
      .addEventListener("submit", (e) => {
        e.preventDefault();
        void this.startSession(new FormData(e.target as HTMLFormElement));
      });
    root.querySelector<HTMLButtonElement>("#export")!
      .addEventListener("click", () => void this.exportBundle());
    root.querySelector<HTMLButtonElement>("#verify")!
      .addEventListener("click", () => void this.runVerify());

    this.preview.setStatus("upload an image + depth to begin");
  }

  async startSession(form: FormData): Promise<void> {
    const image = form.get("image") as File;
    const depth = form.get("depth") as File;
    const masks = form.get("masks") as File | null;
    const scaleRaw = form.get("depth_scale") as string | null;
    try {
      this.sessionId = await this.client.createSession(
        image, depth, masks && masks.size > 0 ? masks : undefined,
        scaleRaw ? Number(scaleRaw) : undefined);
    } catch (err) {
      this.preview.setStatus(String(err), true);
      return;
    }
    this.designCanvas.setImage(URL.createObjectURL(image));
    document.querySelector<HTMLButtonElement>("#export")!.disabled = false;
    document.querySelector<HTMLButtonElement>("#verify")!.disabled = false;
    this.preview.setStatus("session ready; translating...");
    this.edited();
  }

  /** Every edit funnels here: re-validate, debounce, translate, repaint. */
  edited(): void {
    this.inspector.render();
    this.designCanvas.redraw();
    if (!this.sessionId) return;
    let design;
    try {
      design = buildDesign(this.state);
    } catch (err) {
      this.preview.setStatus(String(err), true);
      return;
    }
    const sid = this.sessionId;
    this.scheduler.request((signal) =>
      this.client.translate(sid, design, { signal }));
  }

  onTranslated(response: TranslateResponse): void {
    this.lastResponse = response;
    this.preview.setResult(buildDesign(this.state), response);
  }

  async exportBundle(): Promise<void> {
    if (!this.sessionId) return;
    try {
      const blob = await this.client.exportBundle(this.sessionId);
      const a = document.createElement("a");
      a.href = URL.createObjectURL(blob);
      a.download = "bundle.zip";
      a.click();
      URL.revokeObjectURL(a.href);
    } catch (err) {
      this.preview.setStatus(String(err), true);
    }
  }

  async runVerify(): Promise<void> {
    if (!this.sessionId) return;
    try {
      const report = await this.client.verify(this.sessionId);
      const fmt = (v: number | null) => (v === null ? "n/a" : v.toExponential(2));
      document.querySelector("#metrics")!.textContent =
        `rot ${fmt(report.rot_err)} | trans ${fmt(report.trans_err)} | `
        + `camMC ${fmt(report.cam_mc)} | objMC ${fmt(report.obj_mc)}`;
    } catch (err) {
      this.preview.setStatus(String(err), true);
    }
  }
}

new App().mount(document.querySelector("#app")!);
