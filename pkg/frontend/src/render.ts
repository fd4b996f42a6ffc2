// Canvas rendering of a scene: circles colored by face class, dashed when
// invisible, chords, tangency markers, the lattice parallelogram, and the
// draggable parameter handles.  Pan/zoom lives in a view transform that the
// caller preserves across recomputes.

import { ViewTransform } from "./state.js";
import { Complex2, RepConfig, Scene } from "./types.js";

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"];

export const HANDLE_COLORS: Record<keyof RepConfig, string> = {
  a: "#2ca02c", b: "#9467bd", c: "#d62728",
};

export function defaultView(scene: Scene, width: number,
                            height: number): ViewTransform {
  const [x0, y0, x1, y1] = scene.window;
  const scale = Math.min(width / (x1 - x0), height / (y1 - y0));
  return {
    scale,
    offsetX: width / 2 - scale * (x0 + x1) / 2,
    offsetY: height / 2 + scale * (y0 + y1) / 2,
  };
}

export function toPixel(view: ViewTransform, z: Complex2): [number, number] {
  return [view.offsetX + view.scale * z[0], view.offsetY - view.scale * z[1]];
}

export function toPlane(view: ViewTransform, px: number,
                        py: number): Complex2 {
  return [(px - view.offsetX) / view.scale, (view.offsetY - py) / view.scale];
}

export function drawScene(ctx: CanvasRenderingContext2D, scene: Scene,
                          view: ViewTransform, stale: boolean): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, width, height);

  // lattice parallelogram
  ctx.strokeStyle = "#b5b5b5";
  ctx.setLineDash([6, 4]);
  ctx.beginPath();
  const para = scene.lattice.parallelogram;
  para.concat([para[0]]).forEach((p, i) => {
    const [x, y] = toPixel(view, p);
    if (i === 0) ctx.moveTo(x, y); else ctx.lineTo(x, y);
  });
  ctx.stroke();
  ctx.setLineDash([]);

  for (const c of scene.circles) {
    const [x, y] = toPixel(view, c.center);
    ctx.beginPath();
    ctx.arc(x, y, c.radius * view.scale, 0, 2 * Math.PI);
    if (c.visible) {
      ctx.strokeStyle = PALETTE[c.color % PALETTE.length];
      ctx.setLineDash([]);
      ctx.lineWidth = 1.8;
    } else {
      ctx.strokeStyle = "#c0c0c0";
      ctx.setLineDash([5, 4]);
      ctx.lineWidth = 1.0;
    }
    ctx.stroke();
  }
  ctx.setLineDash([]);

  ctx.strokeStyle = "#111111";
  ctx.lineWidth = 1.4;
  for (const ch of scene.chords) {
    const [ax, ay] = toPixel(view, ch.a);
    const [bx, by] = toPixel(view, ch.b);
    ctx.beginPath();
    ctx.moveTo(ax, ay);
    ctx.lineTo(bx, by);
    ctx.stroke();
  }

  ctx.strokeStyle = "#d62728";
  ctx.lineWidth = 2;
  for (const tg of scene.tangencies) {
    const [x, y] = toPixel(view, tg.point);
    ctx.beginPath();
    ctx.moveTo(x - 5, y); ctx.lineTo(x + 5, y);
    ctx.moveTo(x, y - 5); ctx.lineTo(x, y + 5);
    ctx.stroke();
  }

  if (stale) {
    ctx.fillStyle = "rgba(255, 255, 255, 0.45)";
    ctx.fillRect(0, 0, width, height);
  }
}

export function drawHandles(ctx: CanvasRenderingContext2D, params: RepConfig,
                            view: ViewTransform): void {
  for (const key of ["a", "b", "c"] as const) {
    const [x, y] = toPixel(view, params[key]);
    ctx.beginPath();
    ctx.arc(x, y, 6, 0, 2 * Math.PI);
    ctx.fillStyle = HANDLE_COLORS[key];
    ctx.fill();
    ctx.strokeStyle = "#ffffff";
    ctx.lineWidth = 1.5;
    ctx.stroke();
    ctx.fillStyle = "#333333";
    ctx.font = "12px sans-serif";
    ctx.fillText(key, x + 8, y - 8);
  }
}

export function hitHandle(params: RepConfig, view: ViewTransform, px: number,
                          py: number): keyof RepConfig | null {
  for (const key of ["c", "a", "b"] as const) {
    const [x, y] = toPixel(view, params[key]);
    if (Math.hypot(px - x, py - y) <= 10) return key;
  }
  return null;
}
