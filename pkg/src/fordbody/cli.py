"""Command line entry points.

Exit codes: 0 terminated and verified, 1 config error, 2 indiscreteness
signal, 3 budget exhausted / unresolved / verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import tolerances
from .dual import build_dual
from .engine import (Budget, FordDomain, Status, brute_force_oracle,
                     run_procedure)
from .errors import (DegenerateLattice, FordBodyError, NotLoxodromic,
                     NotParabolic, SchemaError)
from .lattice import Rectangle
from .presets import PRESETS, preset_config
from .scene import dumps_canonical, parse_rep_config, to_scene, to_svg
from .service import sweep_timeline_dict
from .sweep import RepPath

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INDISCRETE = 2
EXIT_UNRESOLVED = 3
EXIT_MISMATCH = 4


def _load_config(args) -> dict:
    if args.preset:
        if args.preset not in PRESETS:
            raise SchemaError("preset", f"unknown preset {args.preset!r}")
        return preset_config(args.preset)
    if not args.input:
        raise SchemaError("input", "provide --input FILE or --preset NAME")
    return json.loads(Path(args.input).read_text())


def _budget(args) -> Budget:
    return Budget(max_faces=args.max_faces, max_iterations=args.max_iter)


def _window(args) -> Optional[Rectangle]:
    if not args.window:
        return None
    parts = [float(v) for v in args.window.split(",")]
    if len(parts) != 4:
        raise SchemaError("window", "expected x0,y0,x1,y1")
    return Rectangle(parts[0], parts[1], parts[2], parts[3])


def _status_exit(fd: FordDomain) -> int:
    if fd.status == Status.INDISCRETE_SIGNAL:
        return EXIT_INDISCRETE
    if fd.status == Status.TERMINATED and fd.poincare.passed:
        return EXIT_OK
    return EXIT_UNRESOLVED


def cmd_compute(args) -> int:
    try:
        parsed = parse_rep_config(_load_config(args))
    except (SchemaError, NotParabolic, NotLoxodromic, DegenerateLattice,
            json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if isinstance(parsed, RepPath):
        print("error: path config given to compute; use the sweep command",
              file=sys.stderr)
        return EXIT_CONFIG
    fd = run_procedure(parsed, budget=_budget(args))
    dual = build_dual(fd) if fd.status == Status.TERMINATED else None
    scene = to_scene(fd, dual, _window(args))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "scene.json").write_text(scene.to_json())
    (out_dir / "scene.svg").write_text(to_svg(scene))
    d = scene.diagnostics
    print(f"status={d['status']} faces={d['face_class_count']} "
          f"edges={d['edge_class_count']} poincare={d['poincare_passed']} "
          f"tunnel={d['tunnel']} min_parabolic={d['min_parabolic']}")
    return _status_exit(fd)


def cmd_sweep(args) -> int:
    try:
        parsed = parse_rep_config(_load_config(args))
    except (SchemaError, NotParabolic, NotLoxodromic, DegenerateLattice,
            json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not isinstance(parsed, RepPath):
        print("error: rep config given to sweep; use the compute command",
              file=sys.stderr)
        return EXIT_CONFIG
    if args.samples:
        parsed = RepPath(parsed.t_start, parsed.t_end, parsed.alpha,
                         parsed.beta, parsed.gamma, args.samples)
    payload = sweep_timeline_dict(parsed, budget=_budget(args))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "timeline.json").write_text(dumps_canonical(payload))
    for i, event in enumerate(payload["events"]):
        for side, t in zip(("before", "after"), event["bracket"]):
            try:
                rep = parsed.rep_at(t)
                fd = run_procedure(rep, budget=_budget(args))
                dual = build_dual(fd) if fd.status == Status.TERMINATED else None
                scene = to_scene(fd, dual, _window(args))
                (out_dir / f"event_{i:02d}_{side}.svg").write_text(to_svg(scene))
            except FordBodyError:
                pass
    kinds = [e["kind"] for e in payload["events"]]
    print(f"samples={len(payload['samples'])} events={len(kinds)} kinds={kinds}")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    try:
        parsed = parse_rep_config(_load_config(args))
    except (SchemaError, NotParabolic, NotLoxodromic, DegenerateLattice,
            json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if isinstance(parsed, RepPath):
        print("error: path config given to oracle-check", file=sys.stderr)
        return EXIT_CONFIG
    fd = run_procedure(parsed, budget=_budget(args))
    if fd.status != Status.TERMINATED:
        print(f"status={fd.status.value}; oracle comparison skipped")
        return _status_exit(fd)
    weight = args.weight or (fd.max_face_weight() + 2)
    oracle = {w.to_string() for w in brute_force_oracle(parsed, weight)}
    procedure = fd.face_strings()
    if oracle == procedure:
        print(f"match: {len(procedure)} face classes at weight {weight}")
        return EXIT_OK
    print(f"MISMATCH at weight {weight}: procedure={sorted(procedure)} "
          f"oracle={sorted(oracle)}")
    return EXIT_MISMATCH


def cmd_verify(args) -> int:
    try:
        parsed = parse_rep_config(_load_config(args))
    except (SchemaError, NotParabolic, NotLoxodromic, DegenerateLattice,
            json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if isinstance(parsed, RepPath):
        print("error: path config given to verify", file=sys.stderr)
        return EXIT_CONFIG
    fd = run_procedure(parsed, budget=_budget(args))
    print(f"status: {fd.status.value}"
          + (f" ({fd.status_reason})" if fd.status_reason else ""))
    print(f"faces: {sorted(f.word.to_string() for f in fd.faces)}")
    print(f"pairings_ok: {fd.poincare.pairings_ok} "
          f"(deviation {fd.poincare.pairing_deviation:.3g})")
    for i, er in enumerate(fd.poincare.edge_reports):
        print(f"edge[{i}] cycle={er.cycle} monodromy_dev={er.monodromy_deviation:.3g} "
              f"angle_sum={er.angle_sum:.12f} ok={er.ok}")
    print(f"poincare passed: {fd.poincare.passed}")
    print(f"min_parabolic: {fd.min_parabolic.value}")
    print(f"shimizu_ok: {fd.shimizu.ok}")
    return _status_exit(fd)


def cmd_serve(args) -> int:
    from .service import serve
    static = args.static_dir
    if static is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        static = str(candidate) if candidate.is_dir() else None
    serve(port=args.port, static_dir=static)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fordbody",
        description="Ford domains of hyperbolic structures on the "
                    "(1;2)-compression body")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples=False, port=False):
        p.add_argument("--input", help="config JSON file")
        p.add_argument("--preset", help="named preset instead of --input")
        p.add_argument("--out-dir", default="out", help="output directory")
        p.add_argument("--window", help="x0,y0,x1,y1 view window")
        p.add_argument("--max-faces", type=int, default=256)
        p.add_argument("--max-iter", type=int, default=20000)
        p.add_argument("--eps-geom", type=float, default=None)
        if samples:
            p.add_argument("--samples", type=int, default=None)
        if port:
            p.add_argument("--port", type=int, default=8765)

    p = sub.add_parser("compute", help="compute one Ford domain")
    common(p)
    p.set_defaults(func=cmd_compute)
    p = sub.add_parser("sweep", help="sweep a parameter path")
    common(p, samples=True)
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("oracle-check", help="compare against brute force")
    common(p)
    p.add_argument("--weight", type=int, default=None)
    p.set_defaults(func=cmd_oracle_check)
    p = sub.add_parser("verify", help="print the verification report")
    common(p)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("serve", help="run the local HTTP service")
    common(p, port=True)
    p.add_argument("--static-dir", default=None,
                   help="directory of UI assets to serve")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "eps_geom", None):
        try:
            tolerances.set_eps_geom(args.eps_geom)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
