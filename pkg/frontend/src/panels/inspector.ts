/**
 * Object & local-motion inspector: tool picker for the design canvas, the
 * object list with depth modes, and parent selection for new local tracks.
 */
import { DesignState, removeObject, setDepthMode } from "../state.js";
import { DepthMode } from "../designSchema.js";
import { objectColor } from "../overlay.js";
import { DesignCanvasPanel, Tool } from "./designCanvas.js";

export class InspectorPanel {
  constructor(private root: HTMLElement, private state: DesignState,
              private canvas: DesignCanvasPanel, private onChange: () => void) {
    this.render();
  }

  render(): void {
    this.root.innerHTML = "<h2>Objects & local motion</h2>";

    const tools = document.createElement("div");
    tools.className = "tools";
    (["box", "track", "refpoint"] as Tool[]).forEach((tool) => {
      const btn = document.createElement("button");
      btn.textContent = { box: "Draw box", track: "Draw local track",
                          refpoint: "Reference point" }[tool];
      btn.classList.toggle("active", this.canvas.tool === tool);
      btn.addEventListener("click", () => {
        this.canvas.tool = tool;
        this.render();
      });
      tools.append(btn);
    });
    this.root.append(tools);

    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = this.canvas.tool === "box"
      ? "Drag on the canvas to set the selected object's key box at the "
        + "current frame (a new drag with no selection creates an object)."
      : this.canvas.tool === "track"
        ? "Click to add timed vertices at the current frame; double-click to finish."
        : "Click to drop a reference-depth point for the selected object.";
    this.root.append(hint);

    const list = document.createElement("div");
    list.className = "object-list";
    this.state.objects.forEach((obj, index) => {
      const row = document.createElement("div");
      row.className = "object-row";
      if (obj.id === this.canvas.selectedObject) row.classList.add("selected");

      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.background = objectColor(index);

      const name = document.createElement("button");
      name.textContent = `object ${obj.id} (${obj.key_boxes.length} keys)`;
      name.addEventListener("click", () => {
        this.canvas.selectedObject = obj.id;
        this.render();
        this.canvas.redraw();
      });

      const mode = document.createElement("select");
      for (const value of ["mask_mean", "reference_point", "perspective"]) {
        const opt = document.createElement("option");
        opt.value = value;
        opt.textContent = value;
        opt.selected = obj.depth_mode === value;
        mode.append(opt);
      }
      mode.addEventListener("change", () => {
        setDepthMode(obj, mode.value as DepthMode);
        this.onChange();
      });

      const remove = document.createElement("button");
      remove.textContent = "✕";
      remove.title = "remove object";
      remove.addEventListener("click", () => {
        removeObject(this.state, obj.id);
        if (this.canvas.selectedObject === obj.id) this.canvas.selectedObject = null;
        this.render();
        this.onChange();
      });

      row.append(swatch, name, mode, remove);
      list.append(row);
    });
    this.root.append(list);

    const parent = document.createElement("select");
    parent.title = "parent object for new local tracks";
    const none = document.createElement("option");
    none.value = "";
    none.textContent = "no parent (camera only)";
    parent.append(none);
    for (const obj of this.state.objects) {
      const opt = document.createElement("option");
      opt.value = String(obj.id);
      opt.textContent = `ride object ${obj.id}`;
      opt.selected = this.canvas.trackParent === obj.id;
      parent.append(opt);
    }
    parent.addEventListener("change", () => {
      this.canvas.trackParent = parent.value === "" ? null : Number(parent.value);
    });
    const parentLabel = document.createElement("label");
    parentLabel.append("new track parent: ", parent);
    this.root.append(parentLabel);

    const tracks = document.createElement("div");
    tracks.className = "track-list";
    this.state.localTracks.forEach((track, i) => {
      const row = document.createElement("div");
      row.className = "object-row";
      const label = document.createElement("span");
      label.textContent = `track ${i} (${track.samples.length} pts`
        + `${track.parent !== undefined ? `, parent ${track.parent}` : ""})`;
      const remove = document.createElement("button");
      remove.textContent = "✕";
      remove.addEventListener("click", () => {
        this.state.localTracks.splice(i, 1);
        this.render();
        this.onChange();
      });
      row.append(label, remove);
      tracks.append(row);
    });
    this.root.append(tracks);
  }
}
