"""Scene serialization: canonical JSON for the explorer, SVG snapshots, and
config parsing.

All floats are emitted with 17 significant digits so serialize/parse is an
exact round trip and output bytes are reproducible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .dual import DualComplex, core_tunnel_status
from .engine import FordDomain, Representation, normalize_representation
from .errors import SchemaError
from .lattice import Rectangle, offsets_reaching
from .sweep import RepPath

SCHEMA_VERSION = 1

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"]


# ---------------------------------------------------------------------------
# Canonical JSON
# ---------------------------------------------------------------------------

def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite number in scene")
    s = format(float(x), ".17g")
    if not any(ch in s for ch in ".eE"):
        s += ".0"
    return s


def dumps_canonical(obj) -> str:
    """JSON with insertion-ordered keys and 17-significant-digit floats."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps_canonical(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = []
        for k, v in obj.items():
            parts.append(json.dumps(str(k)) + ":" + dumps_canonical(v))
        return "{" + ",".join(parts) + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _c2(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# Scene
# ---------------------------------------------------------------------------

@dataclass
class Scene:
    schema_version: int
    params: Dict
    window: List[float]
    lattice: Dict
    circles: List[Dict]
    chords: List[Dict]
    tangencies: List[Dict]
    diagnostics: Dict

    def to_dict(self) -> Dict:
        return {
            "schema_version": self.schema_version,
            "params": self.params,
            "window": self.window,
            "lattice": self.lattice,
            "circles": self.circles,
            "chords": self.chords,
            "tangencies": self.tangencies,
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return dumps_canonical(self.to_dict())

    @staticmethod
    def from_dict(data: Dict) -> "Scene":
        return Scene(data["schema_version"], data["params"], data["window"],
                     data["lattice"], data["circles"], data["chords"],
                     data["tangencies"], data["diagnostics"])


def parse_scene(text: str) -> Scene:
    return Scene.from_dict(json.loads(text))


def default_window(rep: Representation, margin: float = 2.5) -> Rectangle:
    corners = [0j, rep.lattice.a, rep.lattice.b, rep.lattice.a + rep.lattice.b]
    xs = [z.real for z in corners]
    ys = [z.imag for z in corners]
    return Rectangle(min(xs) - margin, min(ys) - margin,
                     max(xs) + margin, max(ys) + margin)


def to_scene(fd: FordDomain, dual: Optional[DualComplex],
             window: Optional[Rectangle] = None) -> Scene:
    """Deterministic scene: circles, visible chords, tangency markers and the
    diagnostics block, ordered by word then translate offset."""
    rep = fd.rep
    lat = rep.lattice
    window = window or default_window(rep)
    visible_order = sorted(fd.faces, key=lambda f: f.key())
    class_index = {f.word: i for i, f in enumerate(visible_order)}
    pair_color: Dict[Tuple, int] = {}
    for f in visible_order:
        inv_core, _ = f.word.inverse().face_class()
        key = min(f.word.sort_key(), inv_core.sort_key())
        pair_color.setdefault(key, len(pair_color))

    circles: List[Dict] = []
    for f in sorted(fd.drawn, key=lambda f: f.key()):
        from .lattice import translates_in_window
        cls = class_index.get(f.word, -1) if f.visible else -1
        for t in translates_in_window(lat, f.sphere, window):
            if cls >= 0:
                inv_core, _ = f.word.inverse().face_class()
                color = pair_color[min(f.word.sort_key(), inv_core.sort_key())]
            else:
                color = -1
            circles.append({
                "center": _c2(t.center),
                "radius": float(t.radius),
                "word": f.word.to_string(),
                "offset": [t.lattice_offset[0], t.lattice_offset[1]],
                "visible": bool(cls >= 0),
                "face_class": cls,
                "color": color,
            })

    cx = complex((window.x0 + window.x1) / 2.0, (window.y0 + window.y1) / 2.0)
    half_diag = math.hypot(window.x1 - window.x0, window.y1 - window.y0) / 2.0
    chords: List[Dict] = []
    for ei, e in enumerate(fd.edges):
        for rec in e.arcs:
            if not rec.arc.visible_subarcs:
                continue
            lo, hi = rec.arc.visible_subarcs[0]
            za = rec.arc.endpoint_a + lo * (rec.arc.endpoint_b - rec.arc.endpoint_a)
            zb = rec.arc.endpoint_a + hi * (rec.arc.endpoint_b - rec.arc.endpoint_a)
            mid = (za + zb) / 2.0
            reach = half_diag + abs(zb - za) / 2.0
            for p, q in sorted(offsets_reaching(lat, mid, cx, reach)):
                v = lat.vec(p, q)
                if window.distance_to(mid + v) > abs(zb - za) / 2.0:
                    continue
                chords.append({
                    "a": _c2(za + v),
                    "b": _c2(zb + v),
                    "edge_class": ei,
                    "owners": sorted([rec.s1.word.to_string(),
                                      rec.s2.word.to_string()]),
                    "offset": [p, q],
                })

    tangencies: List[Dict] = []
    for marker in fd.tangencies:
        for p, q in sorted(offsets_reaching(lat, marker.point, cx, half_diag)):
            pt = marker.point + lat.vec(p, q)
            if window.distance_to(pt) > 0.0:
                continue
            tangencies.append({"point": _c2(pt),
                               "words": list(marker.words),
                               "offset": [p, q]})

    tunnel = core_tunnel_status(fd)
    diagnostics = {
        "status": fd.status.value,
        "status_reason": fd.status_reason,
        "poincare_passed": bool(fd.poincare.passed),
        "pairings_ok": bool(fd.poincare.pairings_ok),
        "tunnel": tunnel.certification.value,
        "gamma_visible": bool(tunnel.gamma_visible),
        "min_parabolic": fd.min_parabolic.value,
        "shimizu_ok": bool(fd.shimizu.ok),
        "face_class_count": len(fd.faces),
        "edge_class_count": len(fd.edges),
        "vertex_class_count": len(fd.vertices),
        "face_words": sorted(f.word.to_string() for f in fd.faces),
        "dual_counts": list(dual.counts()) if dual is not None else None,
        "marginal_words": sorted(fd.marginal_words),
    }
    params = {"a": _c2(rep.a), "b": _c2(rep.b), "c": _c2(rep.c)}
    lattice = {
        "a": _c2(lat.a),
        "b": _c2(lat.b),
        "parallelogram": [_c2(0j), _c2(lat.a), _c2(lat.a + lat.b), _c2(lat.b)],
    }
    return Scene(SCHEMA_VERSION, params,
                 [window.x0, window.y0, window.x1, window.y1],
                 lattice, circles, chords, tangencies, diagnostics)


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

def _svg_num(x: float) -> str:
    return format(x, ".8g")


def to_svg(scene: Scene, width: int = 800) -> str:
    """Deterministic SVG: solid circles for visible faces, dashed for hidden,
    chords as lines, the lattice parallelogram as a polyline."""
    x0, y0, x1, y1 = scene.window
    w = x1 - x0
    h = y1 - y0
    height = int(round(width * h / w)) if w > 0 else width
    sx = width / w

    def px(z: List[float]) -> Tuple[float, float]:
        return ((z[0] - x0) * sx, (y1 - z[1]) * sx)

    out = []
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
               f'height="{height}" viewBox="0 0 {width} {height}">')
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    # axes
    if x0 < 0 < x1:
        ax, _ = px([0.0, 0.0])
        out.append(f'<line x1="{_svg_num(ax)}" y1="0" x2="{_svg_num(ax)}" '
                   f'y2="{height}" stroke="#dddddd" stroke-width="1"/>')
    if y0 < 0 < y1:
        _, ay = px([0.0, 0.0])
        out.append(f'<line x1="0" y1="{_svg_num(ay)}" x2="{width}" '
                   f'y2="{_svg_num(ay)}" stroke="#dddddd" stroke-width="1"/>')
    pts = " ".join(f"{_svg_num(px(p)[0])},{_svg_num(px(p)[1])}"
                   for p in scene.lattice["parallelogram"] + [scene.lattice["parallelogram"][0]])
    out.append(f'<polyline points="{pts}" fill="none" stroke="#999999" '
               f'stroke-width="1" stroke-dasharray="6 3"/>')
    for c in scene.circles:
        cxp, cyp = px(c["center"])
        r = c["radius"] * sx
        color = _PALETTE[c["color"] % len(_PALETTE)] if c["visible"] else "#bbbbbb"
        dash = '' if c["visible"] else ' stroke-dasharray="4 3"'
        out.append(f'<circle cx="{_svg_num(cxp)}" cy="{_svg_num(cyp)}" '
                   f'r="{_svg_num(r)}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5"{dash}/>')
    for ch in scene.chords:
        ax, ay = px(ch["a"])
        bx, by = px(ch["b"])
        out.append(f'<line x1="{_svg_num(ax)}" y1="{_svg_num(ay)}" '
                   f'x2="{_svg_num(bx)}" y2="{_svg_num(by)}" '
                   f'stroke="#000000" stroke-width="1.2"/>')
    for tg in scene.tangencies:
        txp, typ = px(tg["point"])
        out.append(f'<path d="M {_svg_num(txp - 4)} {_svg_num(typ)} '
                   f'L {_svg_num(txp + 4)} {_svg_num(typ)} '
                   f'M {_svg_num(txp)} {_svg_num(typ - 4)} '
                   f'L {_svg_num(txp)} {_svg_num(typ + 4)}" '
                   f'stroke="#d62728" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------

def _want(obj: Dict, key: str, path: str = ""):
    if key not in obj:
        raise SchemaError(path + key)
    return obj[key]


def _as_complex(value, path: str) -> complex:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, (int, float)) for v in value)):
        raise SchemaError(path, f"{path}: expected [re, im]")
    return complex(value[0], value[1])


def _as_matrix(value, path: str):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaError(path, f"{path}: expected 2x2 matrix")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, (list, tuple)) or len(row) != 2:
            raise SchemaError(f"{path}[{i}]")
        rows.append(tuple(_as_complex(v, f"{path}[{i}][{j}]")
                          for j, v in enumerate(row)))
    return ((rows[0][0], rows[0][1]), (rows[1][0], rows[1][1]))


def _as_poly_entry(value, path: str) -> Tuple[complex, ...]:
    if not isinstance(value, (list, tuple)) or not value:
        raise SchemaError(path, f"{path}: expected list of [re, im] coefficients")
    return tuple(_as_complex(v, f"{path}[{k}]") for k, v in enumerate(value))


def _as_poly_matrix(value, path: str):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaError(path, f"{path}: expected 2x2 coefficient tables")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, (list, tuple)) or len(row) != 2:
            raise SchemaError(f"{path}[{i}]")
        rows.append(tuple(_as_poly_entry(v, f"{path}[{i}][{j}]")
                          for j, v in enumerate(row)))
    return ((rows[0][0], rows[0][1]), (rows[1][0], rows[1][1]))


def parse_rep_config(text: Union[str, Dict]) -> Union[Representation, RepPath]:
    """Parse a representation or path config.

    Standard form: {"a": [re,im], "b": [re,im], "c": [re,im]}.
    Raw matrices:  {"alpha": [[..],[..]], "beta": ..., "gamma": ...}.
    Paths add:     {"t_range": [lo,hi], "entries": {...}, "samples": n}.
    """
    if isinstance(text, str):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"not valid JSON: {exc}") from exc
    else:
        data = text
    if not isinstance(data, dict):
        raise SchemaError("$", "top level must be an object")
    if "t_range" in data or "entries" in data:
        t_range = _want(data, "t_range")
        if (not isinstance(t_range, (list, tuple)) or len(t_range) != 2
                or not all(isinstance(v, (int, float)) for v in t_range)):
            raise SchemaError("t_range")
        entries = _want(data, "entries")
        if not isinstance(entries, dict):
            raise SchemaError("entries")
        alpha = _as_poly_matrix(_want(entries, "alpha", "entries."), "entries.alpha")
        beta = _as_poly_matrix(_want(entries, "beta", "entries."), "entries.beta")
        gamma = _as_poly_matrix(_want(entries, "gamma", "entries."), "entries.gamma")
        samples = data.get("samples", 64)
        if not isinstance(samples, int) or samples < 2:
            raise SchemaError("samples")
        return RepPath(float(t_range[0]), float(t_range[1]),
                       alpha, beta, gamma, samples)
    if "alpha" in data or "beta" in data or "gamma" in data:
        alpha = _as_matrix(_want(data, "alpha"), "alpha")
        beta = _as_matrix(_want(data, "beta"), "beta")
        gamma = _as_matrix(_want(data, "gamma"), "gamma")
        return normalize_representation(alpha, beta, gamma)
    a = _as_complex(_want(data, "a"), "a")
    b = _as_complex(_want(data, "b"), "b")
    c = _as_complex(_want(data, "c"), "c")
    return Representation.from_standard(a, b, c)
