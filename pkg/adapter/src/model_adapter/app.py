"""HTTP routes implementing the generation wire contract.

Request and response bodies are validated against the same schema file
the pipeline's client enforces, loaded from the fcgkit package data so
the two sides can never drift apart.
"""

from __future__ import annotations

import json
import threading
from importlib import resources

import jsonschema
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from model_adapter.backend import load_backends
from model_adapter.config import AdapterConfig


def load_contract() -> dict:
    raw = resources.files("fcgkit").joinpath("schemas/generation.json").read_text(
        encoding="utf-8"
    )
    return json.loads(raw)


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"detail": message})


def create_app(config: AdapterConfig, backends=None) -> FastAPI:
    """Build the service around an AdapterConfig.

    backends may inject preloaded (generate, infer) model wrappers;
    by default both are loaded from the configured identifiers once,
    here, at startup.
    """

    if backends is None:
        backends = load_backends(config)
    generate_backend, infer_backend = backends

    contract = load_contract()
    validators = {
        name: jsonschema.Draft7Validator(contract["$defs"][name])
        for name in (
            "generation_request",
            "generation_response",
            "infer_request",
            "infer_response",
        )
    }

    app = FastAPI(title="model-adapter")
    app.state.config = config
    app.state.capacity = threading.BoundedSemaphore(config.max_concurrent)

    def _validate(name: str, payload) -> str | None:
        errors = sorted(validators[name].iter_errors(payload), key=str)
        if not errors:
            return None
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "body"
        return f"{where}: {first.message}"

    async def _read_json(request: Request):
        try:
            return await request.json()
        except Exception:
            return None

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "model_id": generate_backend.model_id,
            "infer_model_id": infer_backend.model_id,
        }

    @app.post("/generate")
    async def generate(request: Request):
        payload = await _read_json(request)
        if payload is None:
            return _error(400, "body is not valid JSON")
        problem = _validate("generation_request", payload)
        if problem is not None:
            return _error(400, problem)
        if not app.state.capacity.acquire(blocking=False):
            return _error(503, "over capacity, retry later")
        try:
            continuations = await run_in_threadpool(
                generate_backend.generate_continuations,
                payload["prompt"],
                payload["n"],
                payload.get("max_new_tokens", config.max_new_tokens),
                payload.get("temperature", config.temperature),
                payload.get("seed"),
            )
        finally:
            app.state.capacity.release()
        body = {"continuations": continuations, "model_id": generate_backend.model_id}
        problem = _validate("generation_response", body)
        if problem is not None:
            return _error(500, f"response failed contract validation: {problem}")
        return JSONResponse(body)

    @app.post("/infer")
    async def infer(request: Request):
        payload = await _read_json(request)
        if payload is None:
            return _error(400, "body is not valid JSON")
        problem = _validate("infer_request", payload)
        if problem is not None:
            return _error(400, problem)
        if not app.state.capacity.acquire(blocking=False):
            return _error(503, "over capacity, retry later")
        try:
            comment = await run_in_threadpool(
                infer_backend.infer_comment,
                payload["source"],
                config.max_new_tokens,
            )
        finally:
            app.state.capacity.release()
        body = {"comment": comment, "model_id": infer_backend.model_id}
        problem = _validate("infer_response", body)
        if problem is not None:
            return _error(500, f"response failed contract validation: {problem}")
        return JSONResponse(body)

    return app
