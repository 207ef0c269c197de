/**
 * Typed client for the shot-design service. The UI never computes geometry;
 * every overlay coordinate in the app originates from these responses.
 */
import { DesignDoc, serializeDesign } from "./designSchema.js";

export interface TrackDoc {
  kind: "camera" | "local";
  positions: [number, number][];
  visible: boolean[];
}

export interface BoxTrackDoc {
  id: number;
  boxes: { cx: number; cy: number; w: number; h: number }[];
  depth: number[];
}

export interface CoeffDoc {
  track_index: number;
  K: number;
  coeffs: [number, number][];
}

export interface TranslateResponse {
  frame_count: number;
  fps: number;
  tracks: TrackDoc[];
  boxes: BoxTrackDoc[];
  coeffs: CoeffDoc[];
  warnings: string[];
  bbox_frames: string[];
  preview_frames: string[];
  bundle_zip: string;
}

export interface VerifyReport {
  rot_err: number | null;
  trans_err: number | null;
  cam_mc: number | null;
  obj_mc: number;
  reproj_rms: number | null;
}

export class ServiceError extends Error {
  constructor(public status: number, detail: string) {
    super(`service ${status}: ${detail}`);
  }
}

async function raiseForStatus(resp: Response): Promise<Response> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      detail = (await resp.json()).detail ?? detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ServiceError(resp.status, detail);
  }
  return resp;
}

export class ShotServiceClient {
  constructor(public baseUrl: string = "") {}

  url(path: string): string {
    return this.baseUrl + path;
  }

  async createSession(image: Blob, depth: Blob, masks?: Blob,
                      depthScale?: number): Promise<string> {
    const form = new FormData();
    form.append("image", image, "image.png");
    form.append("depth", depth, "depth.pfm");
    if (masks) form.append("masks", masks, "mask.png");
    if (depthScale !== undefined) form.append("depth_scale", String(depthScale));
    const resp = await raiseForStatus(
      await fetch(this.url("/sessions"), { method: "POST", body: form }));
    return (await resp.json()).session_id as string;
  }

  async translate(sessionId: string, design: DesignDoc,
                  options: { points?: number; seed?: number;
                             signal?: AbortSignal } = {}): Promise<TranslateResponse> {
    const params = new URLSearchParams();
    if (options.points !== undefined) params.set("points", String(options.points));
    if (options.seed !== undefined) params.set("seed", String(options.seed));
    const query = params.size > 0 ? `?${params}` : "";
    const resp = await raiseForStatus(
      await fetch(this.url(`/sessions/${sessionId}/translate${query}`), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: serializeDesign(design),
        signal: options.signal,
      }));
    return (await resp.json()) as TranslateResponse;
  }

  async verify(sessionId: string): Promise<VerifyReport> {
    const resp = await raiseForStatus(
      await fetch(this.url(`/sessions/${sessionId}/verify`), { method: "POST" }));
    return (await resp.json()) as VerifyReport;
  }

  async exportBundle(sessionId: string): Promise<Blob> {
    const resp = await raiseForStatus(
      await fetch(this.url(`/sessions/${sessionId}/bundle.zip`)));
    return await resp.blob();
  }

  async deleteSession(sessionId: string): Promise<void> {
    await raiseForStatus(
      await fetch(this.url(`/sessions/${sessionId}`), { method: "DELETE" }));
  }
}
