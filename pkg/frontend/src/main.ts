// DOM wiring for the explorer: canvas, handles, numeric fields, preset
// picker, path scrubber with event markers, diagnostics panel, bookmarks.

import { ApiClient, ServiceError, debounce } from "./api.js";
import {
  ExplorerState, addBookmark, applyInlineError, applyNetworkError,
  applyScene, applyTimeline, deriveBadges, editParam, eventMarkers,
  exportBookmarks, importBookmarks, initialState, neighborSampleTimes,
  repConfigAt, scrubTo, selectPreset,
} from "./state.js";
import {
  defaultView, drawHandles, drawScene, hitHandle, toPlane,
} from "./render.js";
import { Complex2, PathConfig, PresetInfo, RepConfig } from "./types.js";

const api = new ApiClient("");
let state: ExplorerState = initialState({ a: [6, 2], b: [0, 4.5], c: [2, 1] });

const canvas = document.getElementById("view") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const badgesEl = document.getElementById("badges")!;
const presetSel = document.getElementById("preset") as HTMLSelectElement;
const scrubber = document.getElementById("scrubber") as HTMLInputElement;
const scrubRow = document.getElementById("scrub-row")!;
const markersEl = document.getElementById("event-markers")!;
const offlineEl = document.getElementById("offline")!;
const bannerEl = document.getElementById("banner")!;
const fields: Record<string, HTMLInputElement> = {};
for (const key of ["a", "b", "c"]) {
  for (const part of ["re", "im"]) {
    const el = document.getElementById(`${key}-${part}`) as HTMLInputElement;
    fields[`${key}-${part}`] = el;
  }
}

function render() {
  if (state.scene) {
    if (!state.view) state.view = defaultView(state.scene, canvas.width, canvas.height);
    drawScene(ctx, state.scene, state.view, state.stale);
    drawHandles(ctx, state.params, state.view);
    const b = deriveBadges(state.scene);
    badgesEl.innerHTML = [
      `<span class="badge">faces ${b.faceCount}</span>`,
      `<span class="badge">edges ${b.edgeCount}</span>`,
      `<span class="badge ${b.tunnel === "dual_certified" ? "good" : "warn"}">tunnel ${b.tunnel}</span>`,
      `<span class="badge ${b.minParabolic === "certified" ? "good" : "warn"}">min-parabolic ${b.minParabolic}</span>`,
      `<span class="badge ${b.poincarePassed ? "good" : "warn"}">verifier ${b.poincarePassed ? "passed" : "failed"}</span>`,
      `<span class="badge ${b.status === "terminated" ? "good" : "warn"}">${b.status}</span>`,
      b.shimizuWarning ? `<span class="badge bad">shimizu violation</span>` : "",
      b.tangencyCount ? `<span class="badge warn">tangency x${b.tangencyCount}</span>` : "",
      state.stale ? `<span class="badge stale">recomputing…</span>` : "",
    ].join(" ");
  }
  offlineEl.style.display = state.offline ? "inline" : "none";
  bannerEl.textContent = state.schemaMismatch
    ? "scene schema version mismatch — update the UI or the service"
    : (state.errorBanner ?? "");
  bannerEl.style.display = bannerEl.textContent ? "block" : "none";
  for (const key of ["a", "b", "c"] as const) {
    fields[`${key}-re`].value = state.params[key][0].toFixed(6);
    fields[`${key}-im`].value = state.params[key][1].toFixed(6);
  }
}

async function recompute() {
  try {
    const scene = await api.compute(state.params);
    state = applyScene(state, scene);
  } catch (err) {
    if ((err as Error).name === "AbortError") return;
    if (err instanceof ServiceError) {
      const msg = typeof err.body === "object" && err.body !== null
        ? JSON.stringify((err.body as Record<string, unknown>).error)
        : String(err.body);
      state = applyInlineError(state, `${err.status}: ${msg}`);
    } else {
      state = applyNetworkError(state);
    }
  }
  render();
}

const debouncedRecompute = debounce(recompute, 150);

function paramEdited(key: keyof RepConfig, value: Complex2) {
  state = editParam(state, key, value);
  render();
  debouncedRecompute();
}

// -- canvas interactions ----------------------------------------------------

let dragging: keyof RepConfig | null = null;
let panning: { x: number; y: number } | null = null;

canvas.addEventListener("pointerdown", (ev) => {
  if (!state.view) return;
  const hit = hitHandle(state.params, state.view, ev.offsetX, ev.offsetY);
  if (hit) {
    dragging = hit;
    canvas.setPointerCapture(ev.pointerId);
  } else {
    panning = { x: ev.offsetX, y: ev.offsetY };
  }
});
canvas.addEventListener("pointermove", (ev) => {
  if (!state.view) return;
  if (dragging) {
    paramEdited(dragging, toPlane(state.view, ev.offsetX, ev.offsetY));
  } else if (panning) {
    state.view.offsetX += ev.offsetX - panning.x;
    state.view.offsetY += ev.offsetY - panning.y;
    panning = { x: ev.offsetX, y: ev.offsetY };
    render();
  }
});
canvas.addEventListener("pointerup", () => {
  dragging = null;
  panning = null;
});
canvas.addEventListener("wheel", (ev) => {
  if (!state.view) return;
  ev.preventDefault();
  const factor = ev.deltaY < 0 ? 1.1 : 1 / 1.1;
  const [zx, zy] = [ev.offsetX, ev.offsetY];
  state.view.offsetX = zx + (state.view.offsetX - zx) * factor;
  state.view.offsetY = zy + (state.view.offsetY - zy) * factor;
  state.view.scale *= factor;
  render();
});

// -- numeric fields -----------------------------------------------------------

for (const key of ["a", "b", "c"] as const) {
  for (const part of [0, 1] as const) {
    const el = fields[`${key}-${part === 0 ? "re" : "im"}`];
    el.addEventListener("change", () => {
      const v: Complex2 = [...state.params[key]] as Complex2;
      v[part] = parseFloat(el.value);
      if (Number.isFinite(v[part])) paramEdited(key, v);
    });
  }
}

// -- presets and the scrubber -------------------------------------------------

let presets: PresetInfo[] = [];

async function onPresetChange() {
  const info = presets.find((p) => p.name === presetSel.value);
  if (!info) return;
  if (info.kind === "rep") {
    state = selectPreset(state, info.name, info.config as RepConfig);
    state = { ...state, timeline: null, pathConfig: null, scrubT: null };
    scrubRow.style.display = "none";
    render();
    debouncedRecompute();
    return;
  }
  const path = info.config as PathConfig;
  scrubRow.style.display = "flex";
  try {
    const timeline = await api.sweep(path);
    state = applyTimeline(state, timeline, path);
    scrubber.min = String(Math.min(...timeline.samples.map((s) => s.t)));
    scrubber.max = String(Math.max(...timeline.samples.map((s) => s.t)));
    scrubber.step = "any";
    scrubber.value = String(state.scrubT);
    markersEl.innerHTML = eventMarkers(timeline)
      .map((m) => `<span class="marker" title="${m.kind}" style="left:${markerPct(m.t)}%"></span>`)
      .join("");
    onScrub();
  } catch {
    state = applyNetworkError(state);
    render();
  }
}

function markerPct(t: number): number {
  const lo = parseFloat(scrubber.min);
  const hi = parseFloat(scrubber.max);
  return ((t - lo) / (hi - lo)) * 100;
}

function onScrub() {
  const pathConfig = state.pathConfig;
  const timeline = state.timeline;
  if (!pathConfig || !timeline) return;
  const t = parseFloat(scrubber.value);
  state = scrubTo(state, t);
  state = { ...state, params: repConfigAt(pathConfig, t) };
  render();
  debouncedRecompute();
  // opportunistic neighbor prefetch keeps scrubbing smooth
  for (const tn of neighborSampleTimes(timeline, t, 1)) {
    void api.computeQuiet(repConfigAt(pathConfig, tn));
  }
}

scrubber.addEventListener("input", onScrub);
presetSel.addEventListener("change", onPresetChange);

// -- bookmarks ----------------------------------------------------------------

document.getElementById("bookmark-add")!.addEventListener("click", () => {
  const name = `bookmark ${state.bookmarks.length + 1}`;
  state = addBookmark(state, name);
  renderBookmarks();
});
document.getElementById("bookmark-export")!.addEventListener("click", () => {
  const blob = new Blob([exportBookmarks(state)], { type: "application/json" });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = "bookmarks.json";
  a.click();
});
(document.getElementById("bookmark-import") as HTMLInputElement)
  .addEventListener("change", async (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (!file) return;
    try {
      state = importBookmarks(state, await file.text());
      renderBookmarks();
    } catch (err) {
      state = applyInlineError(state, String(err));
      render();
    }
  });

function renderBookmarks() {
  const ul = document.getElementById("bookmark-list")!;
  ul.innerHTML = state.bookmarks
    .map((bm, i) => `<li><a href="#" data-i="${i}">${bm.name}</a> `
      + `<code>c=${bm.config.c[0].toFixed(3)}+${bm.config.c[1].toFixed(3)}i</code></li>`)
    .join("");
  ul.querySelectorAll("a").forEach((a) => {
    a.addEventListener("click", (ev) => {
      ev.preventDefault();
      const bm = state.bookmarks[Number((ev.target as HTMLElement).dataset.i)];
      state = { ...state, params: bm.config, stale: true };
      render();
      debouncedRecompute();
    });
  });
}

// -- boot ----------------------------------------------------------------------

async function boot() {
  state.offline = !(await api.health());
  try {
    presets = await api.presets();
    presetSel.innerHTML = presets
      .map((p) => `<option value="${p.name}">${p.name} (${p.kind})</option>`)
      .join("");
  } catch {
    state = applyNetworkError(state);
  }
  render();
  await recompute();
}

void boot();
