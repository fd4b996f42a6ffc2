// Explorer state and its pure transitions.  Everything displayed is derived
// from the last scene delivered by the service; this module does no geometry
// beyond echoing fields (the contract tests pin that).

import {
  Complex2, PathConfig, RepConfig, Scene, SCHEMA_VERSION, Timeline,
} from "./types.js";

export interface Bookmark {
  name: string;
  config: RepConfig; // same shape the CLI accepts
  note: string;
}

export interface Badges {
  faceCount: number;
  edgeCount: number;
  tunnel: string;
  minParabolic: string;
  status: string;
  poincarePassed: boolean;
  shimizuWarning: boolean;
  tangencyCount: number;
}

export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export interface ExplorerState {
  params: RepConfig;
  activePreset: string | null;
  scene: Scene | null;
  stale: boolean;
  offline: boolean;
  schemaMismatch: boolean;
  errorBanner: string | null;
  bookmarks: Bookmark[];
  timeline: Timeline | null;
  pathConfig: PathConfig | null;
  scrubT: number | null;
  view: ViewTransform | null; // preserved across recomputes
}

export function initialState(params: RepConfig): ExplorerState {
  return {
    params,
    activePreset: null,
    scene: null,
    stale: true,
    offline: false,
    schemaMismatch: false,
    errorBanner: null,
    bookmarks: [],
    timeline: null,
    pathConfig: null,
    scrubT: null,
    view: null,
  };
}

export function editParam(state: ExplorerState, key: keyof RepConfig,
                          value: Complex2): ExplorerState {
  // any edit marks the rendered scene stale until the service answers
  return {
    ...state,
    params: { ...state.params, [key]: value },
    activePreset: null,
    stale: true,
  };
}

export function selectPreset(state: ExplorerState, name: string,
                             config: RepConfig): ExplorerState {
  return { ...state, params: config, activePreset: name, stale: true };
}

function sceneLooksValid(scene: unknown): scene is Scene {
  if (typeof scene !== "object" || scene === null) return false;
  const s = scene as Record<string, unknown>;
  return typeof s.schema_version === "number"
    && Array.isArray(s.circles)
    && Array.isArray(s.chords)
    && Array.isArray(s.tangencies)
    && typeof s.diagnostics === "object" && s.diagnostics !== null;
}

export function applyScene(state: ExplorerState, scene: unknown): ExplorerState {
  if (!sceneLooksValid(scene)) {
    // malformed payload: keep the previous view, raise the banner
    return { ...state, errorBanner: "malformed scene from service" };
  }
  if (scene.schema_version !== SCHEMA_VERSION) {
    return { ...state, schemaMismatch: true };
  }
  return {
    ...state,
    scene,
    stale: false,
    offline: false,
    schemaMismatch: false,
    errorBanner: null,
  };
}

export function applyNetworkError(state: ExplorerState): ExplorerState {
  return { ...state, offline: true };
}

export function applyInlineError(state: ExplorerState,
                                 message: string): ExplorerState {
  return { ...state, errorBanner: message, stale: false };
}

export function deriveBadges(scene: Scene): Badges {
  const d = scene.diagnostics;
  return {
    faceCount: d.face_class_count,
    edgeCount: d.edge_class_count,
    tunnel: d.tunnel,
    minParabolic: d.min_parabolic,
    status: d.status,
    poincarePassed: d.poincare_passed,
    shimizuWarning: !d.shimizu_ok,
    tangencyCount: scene.tangencies.length,
  };
}

// --------------------------------------------------------------------------
// bookmarks (export as CLI-compatible rep configs)
// --------------------------------------------------------------------------

export function addBookmark(state: ExplorerState, name: string,
                            note = ""): ExplorerState {
  const bm: Bookmark = {
    name,
    note,
    config: {
      a: [...state.params.a] as Complex2,
      b: [...state.params.b] as Complex2,
      c: [...state.params.c] as Complex2,
    },
  };
  return { ...state, bookmarks: [...state.bookmarks, bm] };
}

export function exportBookmarks(state: ExplorerState): string {
  return JSON.stringify({ bookmarks: state.bookmarks }, null, 2);
}

export function importBookmarks(state: ExplorerState,
                                text: string): ExplorerState {
  const data = JSON.parse(text) as { bookmarks: Bookmark[] };
  if (!Array.isArray(data.bookmarks)) {
    throw new Error("not a bookmark export");
  }
  for (const bm of data.bookmarks) {
    for (const key of ["a", "b", "c"] as const) {
      const v = bm.config[key];
      if (!Array.isArray(v) || v.length !== 2) {
        throw new Error(`bookmark ${bm.name}: bad field ${key}`);
      }
    }
  }
  return { ...state, bookmarks: data.bookmarks };
}

// --------------------------------------------------------------------------
// path scrubbing
// --------------------------------------------------------------------------

export function applyTimeline(state: ExplorerState, timeline: Timeline,
                              pathConfig: PathConfig): ExplorerState {
  return {
    ...state,
    timeline,
    pathConfig,
    scrubT: timeline.samples.length ? timeline.samples[0].t : null,
  };
}

export function scrubTo(state: ExplorerState, t: number): ExplorerState {
  return { ...state, scrubT: t, stale: true };
}

function polyAt(entry: [number, number][], t: number): Complex2 {
  // Horner over the coefficient table: parameter plumbing, not geometry
  let re = 0;
  let im = 0;
  for (let i = entry.length - 1; i >= 0; i--) {
    const nre = re * t + entry[i][0];
    im = im * t + entry[i][1];
    re = nre;
  }
  return [re, im];
}

function ratio(num: Complex2, den: Complex2): Complex2 {
  const d = den[0] * den[0] + den[1] * den[1];
  return [
    (num[0] * den[0] + num[1] * den[1]) / d,
    (num[1] * den[0] - num[0] * den[1]) / d,
  ];
}

export function repConfigAt(path: PathConfig, t: number): RepConfig {
  const e = path.entries;
  return {
    a: ratio(polyAt(e.alpha[0][1], t), polyAt(e.alpha[0][0], t)),
    b: ratio(polyAt(e.beta[0][1], t), polyAt(e.beta[0][0], t)),
    c: ratio(polyAt(e.gamma[0][0], t), polyAt(e.gamma[1][0], t)),
  };
}

export function neighborSampleTimes(timeline: Timeline, t: number,
                                    count = 2): number[] {
  // opportunistic prefetch targets around the scrub position
  const ts = timeline.samples.map((s) => s.t);
  const idx = ts.reduce(
    (best, cur, i) => (Math.abs(cur - t) < Math.abs(ts[best] - t) ? i : best),
    0,
  );
  const out: number[] = [];
  for (let d = 1; d <= count; d++) {
    if (idx - d >= 0) out.push(ts[idx - d]);
    if (idx + d < ts.length) out.push(ts[idx + d]);
  }
  return out;
}

export function eventMarkers(timeline: Timeline): { t: number; kind: string }[] {
  return timeline.events.map((e) => ({
    t: (e.bracket[0] + e.bracket[1]) / 2,
    kind: e.kind,
  }));
}
