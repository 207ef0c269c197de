/**
 * Timeline panel: frame count and fps, a frame scrubber shared by the design
 * canvas and the preview, and play/pause at the design fps.
 */
import { DesignState, setFrameCount } from "../state.js";

export class TimelinePanel {
  private scrubber: HTMLInputElement;
  private frameLabel: HTMLSpanElement;
  private playTimer: ReturnType<typeof setInterval> | null = null;
  frame = 0;

  constructor(root: HTMLElement, private state: DesignState,
              onDesignChange: () => void,
              private onFrameChange: (frame: number) => void) {
    root.innerHTML = "<h2>Timeline</h2>";

    const controls = document.createElement("div");
    controls.className = "timeline-controls";

    const frames = document.createElement("input");
    frames.type = "number";
    frames.min = "2";
    frames.value = String(state.frameCount);
    frames.title = "frame count";
    frames.addEventListener("change", () => {
      setFrameCount(state, Math.max(2, Number(frames.value)));
      this.scrubber.max = String(state.frameCount - 1);
      this.setFrame(Math.min(this.frame, state.frameCount - 1));
      onDesignChange();
    });

    const fps = document.createElement("input");
    fps.type = "number";
    fps.min = "1";
    fps.value = String(state.fps);
    fps.title = "frames per second";
    fps.addEventListener("change", () => {
      state.fps = Math.max(1, Number(fps.value));
      onDesignChange();
    });

    const play = document.createElement("button");
    play.textContent = "Play";
    play.addEventListener("click", () => {
      if (this.playTimer !== null) {
        clearInterval(this.playTimer);
        this.playTimer = null;
        play.textContent = "Play";
        return;
      }
      play.textContent = "Pause";
      this.playTimer = setInterval(() => {
        this.setFrame((this.frame + 1) % this.state.frameCount);
      }, 1000 / this.state.fps);
    });

    controls.append("frames:", frames, "fps:", fps, play);

    this.scrubber = document.createElement("input");
    this.scrubber.type = "range";
    this.scrubber.min = "0";
    this.scrubber.max = String(state.frameCount - 1);
    this.scrubber.step = "1";
    this.scrubber.value = "0";
    this.scrubber.className = "scrubber";
    this.scrubber.addEventListener("input", () => {
      this.setFrame(Number(this.scrubber.value));
    });

    this.frameLabel = document.createElement("span");
    this.frameLabel.textContent = "frame 0";

    root.append(controls, this.scrubber, this.frameLabel);
  }

  setFrame(frame: number): void {
    this.frame = frame;
    this.scrubber.value = String(frame);
    this.frameLabel.textContent = `frame ${frame}`;
    this.onFrameChange(frame);
  }
}
