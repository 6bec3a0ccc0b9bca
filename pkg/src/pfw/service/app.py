"""The workbench service: validation, constructions, generators, rendering,
and the streaming check suite."""

from __future__ import annotations

import dataclasses
import json

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from ..caps import DEFAULT_CAPS, caps_from_env, with_overrides
from ..checks import CheckConfig, run_suite, suite_ids
from ..errors import CapExceeded, PfwError, SchemaError
from ..generate import generate
from ..render import render_instance
from ..serialize import Instance, parse_instance, serialize_instance
from .models import (
    CapsResponse,
    CheckRequest,
    ConstructRequest,
    ConstructResponse,
    GenRequest,
    GenResponse,
    RenderRequest,
    RenderResponse,
    ValidateRequest,
    ValidateResponse,
)
from .ops import OPS, run_op


def _error_payload(exc: PfwError):
    detail = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, SchemaError):
        detail["path"] = exc.path
    return {"error": detail}


def create_app(caps=None) -> FastAPI:
    base_caps = caps if caps is not None else caps_from_env(DEFAULT_CAPS)
    app = FastAPI(title="pfw workbench", version="0.1.0")

    @app.exception_handler(PfwError)
    async def _pfw_error(request: Request, exc: PfwError):
        status = 409 if isinstance(exc, CapExceeded) else 422
        return JSONResponse(status_code=status, content=_error_payload(exc))

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/caps", response_model=CapsResponse)
    def caps_endpoint():
        return CapsResponse(**dataclasses.asdict(base_caps))

    @app.get("/checks")
    def checks_endpoint():
        return {"checks": suite_ids()}

    @app.get("/ops")
    def ops_endpoint():
        return {"ops": sorted(OPS)}

    @app.post("/validate", response_model=ValidateResponse)
    def validate(request: ValidateRequest):
        instance = parse_instance(request.document, base_caps)
        return ValidateResponse(valid=True, kind=instance.kind, name=instance.name)

    @app.post("/construct", response_model=ConstructResponse)
    def construct(request: ConstructRequest):
        result = run_op(request.op, request.args, base_caps)
        return ConstructResponse(op=request.op, result=result)

    @app.post("/gen", response_model=GenResponse)
    def gen(request: GenRequest):
        values = generate(
            request.kind, request.seed, request.count, request.params, base_caps
        )
        instances = [
            serialize_instance(Instance(request.kind if request.kind != "poset" else "frame",
                                        f"{request.kind}-{request.seed}-{i}", v))
            for i, v in enumerate(values)
        ]
        return GenResponse(instances=instances)

    @app.post("/render", response_model=RenderResponse)
    def render(request: RenderRequest):
        instance = parse_instance(request.document, base_caps)
        return RenderResponse(dot=render_instance(instance))

    @app.post("/check")
    def check(request: CheckRequest):
        run_caps = base_caps
        if request.caps:
            run_caps = with_overrides(run_caps, **request.caps)
        config = CheckConfig(
            caps=run_caps,
            seed=request.seed,
            max_ji=request.max_ji if request.max_ji is not None else 3,
            max_universe=request.max_universe if request.max_universe is not None else 2,
            samples=request.samples if request.samples is not None else 12,
        )

        def stream():
            total = failed = skipped = 0
            for report in run_suite(request.filter, config):
                total += 1
                if report.verdict == "fail":
                    failed += 1
                elif report.verdict == "skipped":
                    skipped += 1
                yield json.dumps(report.as_dict(), sort_keys=True) + "\n"
            summary = {"summary": {"total": total, "failed": failed, "skipped": skipped}}
            yield json.dumps(summary, sort_keys=True) + "\n"

        return StreamingResponse(stream(), media_type="application/x-ndjson")

    return app
