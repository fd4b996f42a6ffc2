// Thin fetch client; newer edits cancel in-flight compute requests.

import { PathConfig, PresetInfo, RepConfig, Scene, Timeline } from "./types.js";

export class ServiceError extends Error {
  constructor(public status: number, public body: unknown) {
    super(`service returned ${status}`);
  }
}

export class ApiClient {
  private inflight: AbortController | null = null;

  constructor(private base: string = "") {}

  async presets(): Promise<PresetInfo[]> {
    const r = await fetch(`${this.base}/api/presets`);
    if (!r.ok) throw new ServiceError(r.status, await r.text());
    return (await r.json()) as PresetInfo[];
  }

  async health(): Promise<boolean> {
    try {
      const r = await fetch(`${this.base}/api/health`);
      return r.ok;
    } catch {
      return false;
    }
  }

  /** POST /api/compute, cancelling any previous in-flight compute. */
  async compute(config: RepConfig): Promise<Scene> {
    if (this.inflight) this.inflight.abort();
    const ctl = new AbortController();
    this.inflight = ctl;
    try {
      const r = await fetch(`${this.base}/api/compute`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(config),
        signal: ctl.signal,
      });
      const body = await r.json();
      if (!r.ok) throw new ServiceError(r.status, body);
      return body as Scene;
    } finally {
      if (this.inflight === ctl) this.inflight = null;
    }
  }

  /** Prefetches do not cancel the primary request. */
  async computeQuiet(config: RepConfig): Promise<Scene | null> {
    try {
      const r = await fetch(`${this.base}/api/compute`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(config),
      });
      if (!r.ok) return null;
      return (await r.json()) as Scene;
    } catch {
      return null;
    }
  }

  async sweep(config: PathConfig): Promise<Timeline> {
    const r = await fetch(`${this.base}/api/sweep`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
    const body = await r.json();
    if (!r.ok) throw new ServiceError(r.status, body);
    return body as Timeline;
  }
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void, ms: number,
): (...args: A) => void {
  let handle: ReturnType<typeof setTimeout> | null = null;
  return (...args: A) => {
    if (handle !== null) clearTimeout(handle);
    handle = setTimeout(() => fn(...args), ms);
  };
}
