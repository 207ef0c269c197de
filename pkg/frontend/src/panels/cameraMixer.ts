/**
 * Camera mixer panel: one row per base pattern with an enable toggle, a
 * signed magnitude slider and, for orbit/circle, a radius field.
 */
import { PatternName } from "../designSchema.js";
import { DesignState, setPattern } from "../state.js";

const SLIDER_RANGE: Record<PatternName, number> = {
  trucking: 1.0, pedestal: 1.0, dolly: 1.5, pan: 0.6, tilt: 0.5,
  roll: 1.5, zoom: 0.8, orbit: 0.8, circle: 2.0, static: 0,
};

const LABELS: Record<PatternName, string> = {
  trucking: "Trucking (left/right)",
  pedestal: "Pedestal (down/up)",
  dolly: "Dolly (out/in)",
  pan: "Pan (left/right)",
  tilt: "Tilt (down/up)",
  roll: "Roll (ccw/cw)",
  zoom: "Zoom (out/in)",
  orbit: "Orbit (left/right)",
  circle: "Circle (ccw/cw)",
  static: "Static",
};

export class CameraMixerPanel {
  constructor(private root: HTMLElement, private state: DesignState,
              private onChange: () => void) {
    this.render();
  }

  private render(): void {
    this.root.innerHTML = "<h2>Camera motion</h2>";
    for (const row of this.state.patternRows) {
      const div = document.createElement("div");
      div.className = "pattern-row";

      const toggle = document.createElement("input");
      toggle.type = "checkbox";
      toggle.checked = row.enabled;
      toggle.addEventListener("change", () => {
        setPattern(this.state, row.name, { enabled: toggle.checked });
        this.onChange();
      });

      const label = document.createElement("label");
      label.textContent = LABELS[row.name];

      div.append(toggle, label);

      if (row.name !== "static") {
        const slider = document.createElement("input");
        slider.type = "range";
        slider.min = String(-SLIDER_RANGE[row.name]);
        slider.max = String(SLIDER_RANGE[row.name]);
        slider.step = "0.01";
        slider.value = String(row.magnitude);
        const value = document.createElement("span");
        value.className = "value";
        value.textContent = row.magnitude.toFixed(2);
        slider.addEventListener("input", () => {
          const magnitude = Number(slider.value);
          value.textContent = magnitude.toFixed(2);
          setPattern(this.state, row.name, { magnitude });
          if (row.enabled) this.onChange();
        });
        div.append(slider, value);

        if (row.name === "orbit" || row.name === "circle") {
          const radius = document.createElement("input");
          radius.type = "number";
          radius.min = "0.1";
          radius.step = "0.1";
          radius.value = String(row.radius);
          radius.title = "radius (scene units)";
          radius.className = "radius";
          radius.addEventListener("change", () => {
            setPattern(this.state, row.name, { radius: Number(radius.value) });
            if (row.enabled) this.onChange();
          });
          div.append(radius);
        }
      }
      this.root.append(div);
    }
  }
}
