"""Local HTTP service: parameter schema, render endpoint and liveness probe.

Renders run synchronously inside a bounded worker pool (CPU count wide);
the event loop stays free so the health endpoint answers during renders.
Validation failures return 400 with the offending field named.
"""

import asyncio
import json
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.responses import HTMLResponse, JSONResponse

from .engine import RenderConfig, render_to_bytes
from .params import DISTANCE_RANGE_M, PRESET_NAMES, UNIT_RANGE, ParamError, ThunderParams

MAX_SEED = 2**63 - 1

SCHEMA = {
    "controls": [
        {
            "name": "distance",
            "type": "slider",
            "range": list(DISTANCE_RANGE_M),
            "step": 1,
            "default": 500,
            "unit": "m",
            "label": "Distance",
        },
        {
            "name": "initial_strike",
            "type": "slider",
            "range": list(UNIT_RANGE),
            "step": 0.01,
            "default": 0.7,
            "unit": "",
            "label": "Initial strike",
        },
        {
            "name": "rumble",
            "type": "slider",
            "range": list(UNIT_RANGE),
            "step": 0.01,
            "default": 0.5,
            "unit": "",
            "label": "Rumble",
        },
        {
            "name": "growl",
            "type": "slider",
            "range": list(UNIT_RANGE),
            "step": 0.01,
            "default": 0.5,
            "unit": "",
            "label": "Growl",
        },
        {
            "name": "reverb",
            "type": "toggle",
            "default": True,
            "label": "Reverb",
        },
        {
            "name": "preset",
            "type": "select",
            "options": [
                {"value": "v1", "label": "v1 (as surveyed)"},
                {"value": "v2", "label": "v2 (improved)"},
            ],
            "default": "v2",
            "label": "Preset",
        },
    ]
}

_SCHEMA_BYTES = json.dumps(SCHEMA, separators=(",", ":")).encode()

_KNOWN_FIELDS = {"distance", "initial_strike", "rumble", "growl", "reverb", "seed", "preset"}

_PLACEHOLDER_PAGE = """<!doctype html>
<html><head><title>thundersynth</title></head>
<body>
<h1>thundersynth service</h1>
<p>The web UI has not been built. Build it with:</p>
<pre>cd frontend &amp;&amp; npm install &amp;&amp; npm run build</pre>
<p>API endpoints: <code>GET /api/schema</code>, <code>POST /api/render</code>,
<code>GET /healthz</code>.</p>
</body></html>
"""


def _field_error(field: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": {"field": field, "message": message}})


def parse_render_request(body) -> tuple[ThunderParams, int | None]:
    """Validate a render request body; raises ParamError naming the field."""
    if not isinstance(body, dict):
        raise ParamError("body", "request body must be a JSON object")
    unknown = set(body) - _KNOWN_FIELDS
    if unknown:
        field = sorted(unknown)[0]
        raise ParamError(field, f"unknown field {field!r}")
    seed = body.get("seed")
    if seed is not None:
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ParamError("seed", f"seed must be an integer (got {seed!r})")
        if not 0 <= seed <= MAX_SEED:
            raise ParamError("seed", f"seed must lie in [0, {MAX_SEED}]")
    reverb = body.get("reverb", True)
    if not isinstance(reverb, bool):
        raise ParamError("reverb", f"reverb must be a boolean (got {reverb!r})")
    preset = body.get("preset", "v2")
    if preset not in PRESET_NAMES:
        raise ParamError("preset", f"preset must be one of {list(PRESET_NAMES)} (got {preset!r})")
    for name in ("distance", "initial_strike", "rumble", "growl"):
        value = body.get(name)
        if value is not None and (isinstance(value, bool) or not isinstance(value, (int, float))):
            raise ParamError(name, f"{name} must be a number (got {value!r})")
    params = ThunderParams(
        distance=body.get("distance", 500.0),
        initial_strike=body.get("initial_strike", 0.7),
        rumble=body.get("rumble", 0.5),
        growl=body.get("growl", 0.5),
        reverb=reverb,
        preset=preset,
    )
    return params, seed


def create_app(ui_dir=None) -> FastAPI:
    app = FastAPI(title="thundersynth", docs_url=None, redoc_url=None)
    app.state.pool = ThreadPoolExecutor(max_workers=os.cpu_count() or 2)

    @app.get("/api/schema")
    def get_schema() -> Response:
        return Response(content=_SCHEMA_BYTES, media_type="application/json")

    @app.get("/healthz")
    def healthz() -> JSONResponse:
        return JSONResponse({"status": "ok"})

    @app.post("/api/render")
    async def post_render(request: Request):
        try:
            body = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError):
            return _field_error("body", "request body is not valid JSON")
        try:
            params, seed = parse_render_request(body)
        except ParamError as err:
            return _field_error(err.field, str(err))
        if seed is None:
            seed = int(np.random.default_rng().integers(0, 2**32))
        loop = asyncio.get_running_loop()
        try:
            wav_bytes, _report = await loop.run_in_executor(
                app.state.pool, render_to_bytes, params, RenderConfig(seed=seed)
            )
        except Exception:  # pragma: no cover - render failures are defects
            return JSONResponse(status_code=500, content={"error": {"message": "render failed"}})
        return Response(
            content=wav_bytes,
            media_type="audio/wav",
            headers={"X-Thunder-Seed": str(seed)},
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/")
        def index() -> HTMLResponse:
            return HTMLResponse(_PLACEHOLDER_PAGE)

    return app
