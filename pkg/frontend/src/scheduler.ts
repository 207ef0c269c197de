/**
 * Debounced, latest-wins request scheduling: every edit requests a
 * re-translate, calls are debounced (300 ms), and at most one translate is
 * in flight; a newer request aborts the running one.
 */

export const DEBOUNCE_MS = 300;

export type Runner<T> = (signal: AbortSignal) => Promise<T>;

export class TranslateScheduler<T> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private generation = 0;

  constructor(
    private onResult: (value: T) => void,
    private onError: (err: unknown) => void,
    private debounceMs: number = DEBOUNCE_MS,
  ) {}

  /** Schedule a run after the debounce window, replacing any pending one. */
  request(run: Runner<T>): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      this.launch(run);
    }, this.debounceMs);
  }

  /** Run immediately (still latest-wins against in-flight work). */
  flush(run: Runner<T>): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.launch(run);
  }

  private launch(run: Runner<T>): void {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const generation = ++this.generation;
    run(controller.signal).then(
      (value) => {
        if (generation === this.generation) this.onResult(value);
      },
      (err) => {
        if (generation !== this.generation) return; // superseded; drop
        if ((err as Error)?.name === "AbortError") return;
        this.onError(err);
      },
    );
  }

  get inFlight(): boolean {
    return this.controller !== null && this.generation > 0;
  }
}
