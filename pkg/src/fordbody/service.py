"""Local HTTP service exposing the engine to the explorer UI.

Stateless per request; indiscreteness signals are results (200 with
diagnostics), schema problems are 400, and geometric rejections
(non-parabolic cusp pair, non-loxodromic tunnel, degenerate lattice) are 422.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .dual import build_dual
from .engine import Budget, Representation, Status, run_procedure
from .errors import (DegenerateLattice, NotLoxodromic, NotParabolic,
                     SchemaError)
from .presets import PRESETS
from .scene import dumps_canonical, parse_rep_config, to_scene
from .sweep import RepPath, certify_tunnel_along_path, sweep

DEFAULT_TIME_LIMIT = 10.0


def compute_scene_json(rep: Representation, budget: Optional[Budget] = None) -> str:
    fd = run_procedure(rep, budget=budget)
    dual = build_dual(fd) if fd.status == Status.TERMINATED else None
    return to_scene(fd, dual).to_json()


def sweep_timeline_dict(path: RepPath, budget: Optional[Budget] = None) -> dict:
    timeline, events = sweep(path, budget=budget)
    cert = None
    try:
        first = timeline[0]
        if not first.error and first.faces == frozenset({"g", "G"}):
            result = certify_tunnel_along_path(path, budget=budget)
            cert = {"certified": result.certified,
                    "witness_t": result.witness_t,
                    "samples_checked": result.samples_checked}
    except Exception:
        cert = None
    return {
        "schema_version": 1,
        "t_range": [path.t_start, path.t_end],
        "samples": [
            {
                "t": s.t,
                "status": s.status,
                "faces": sorted(s.faces),
                "face_count": len(s.faces),
                "edge_count": len(s.edges),
                "tunnel": s.tunnel,
                "min_parabolic": s.min_parabolic,
                "poincare_passed": s.poincare_passed,
                "error": s.error,
            }
            for s in timeline
        ],
        "events": [
            {
                "kind": e.kind.value,
                "bracket": [e.bracket[0], e.bracket[1]],
                "witnesses": _clean_witnesses(e.witnesses),
            }
            for e in events
        ],
        "tunnel_certificate": cert,
    }


def _clean_witnesses(w: dict) -> dict:
    out = {}
    for k, v in sorted(w.items()):
        if isinstance(v, (list, tuple)):
            out[k] = [list(x) if isinstance(x, tuple) else x for x in v]
        else:
            out[k] = v
    return out


def create_app(time_limit: float = DEFAULT_TIME_LIMIT,
               static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="fordbody", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    budget = Budget(time_limit=time_limit)

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.get("/api/presets")
    def presets():
        return [{"name": name, "kind": info["kind"], "config": info["config"]}
                for name, info in PRESETS.items()]

    @app.post("/api/compute")
    async def compute(request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"error": {"kind": "schema", "field": "$",
                                           "message": "body is not JSON"}},
                                status_code=400)
        try:
            parsed = parse_rep_config(body)
        except SchemaError as exc:
            return JSONResponse({"error": {"kind": "schema", "field": exc.field,
                                           "message": str(exc)}},
                                status_code=400)
        except (NotParabolic, NotLoxodromic, DegenerateLattice) as exc:
            return JSONResponse({"error": {"kind": type(exc).__name__,
                                           "message": str(exc)}},
                                status_code=422)
        if isinstance(parsed, RepPath):
            return JSONResponse({"error": {"kind": "schema", "field": "$",
                                           "message": "path config sent to /api/compute"}},
                                status_code=400)
        try:
            payload = compute_scene_json(parsed, budget=budget)
        except (NotParabolic, NotLoxodromic, DegenerateLattice) as exc:
            return JSONResponse({"error": {"kind": type(exc).__name__,
                                           "message": str(exc)}},
                                status_code=422)
        return Response(content=payload, media_type="application/json")

    @app.post("/api/sweep")
    async def sweep_endpoint(request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"error": {"kind": "schema", "field": "$",
                                           "message": "body is not JSON"}},
                                status_code=400)
        try:
            parsed = parse_rep_config(body)
        except SchemaError as exc:
            return JSONResponse({"error": {"kind": "schema", "field": exc.field,
                                           "message": str(exc)}},
                                status_code=400)
        except (NotParabolic, NotLoxodromic, DegenerateLattice) as exc:
            return JSONResponse({"error": {"kind": type(exc).__name__,
                                           "message": str(exc)}},
                                status_code=422)
        if not isinstance(parsed, RepPath):
            return JSONResponse({"error": {"kind": "schema", "field": "t_range",
                                           "message": "rep config sent to /api/sweep"}},
                                status_code=400)
        payload = dumps_canonical(sweep_timeline_dict(parsed, budget=budget))
        return Response(content=payload, media_type="application/json")

    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def serve(port: int = 8765, host: str = "127.0.0.1",
          time_limit: float = DEFAULT_TIME_LIMIT,
          static_dir: Optional[str] = None) -> None:
    import uvicorn
    app = create_app(time_limit=time_limit, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
