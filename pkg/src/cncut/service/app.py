"""FastAPI application over the ops layer.

Error mapping: malformed or semantically invalid input is 400, a size
cap refusal is 409 (with the offending quantity in the body), and shape
violations caught by the schemas are FastAPI's usual 422.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import CapExceeded
from . import ops
from .models import (
    CountRequest,
    CountResponse,
    GenerateRequest,
    GenerateResponse,
    HealthResponse,
    ParamsRequest,
    ParamsResponse,
    ReduceRequest,
    ReduceResponse,
    SolveRequest,
    SolveResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="cncut",
        version=__version__,
        description="Critical node cut solvers, counting, and reduction generators.",
    )

    @app.exception_handler(ValueError)
    async def _input_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(CapExceeded)
    async def _cap_refusal(request: Request, exc: CapExceeded) -> JSONResponse:
        return JSONResponse(
            status_code=409,
            content={
                "detail": str(exc),
                "what": exc.what,
                "value": exc.value,
                "cap": exc.cap,
            },
        )

    @app.get("/healthz", response_model=HealthResponse)
    async def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/solve", response_model=SolveResponse, response_model_exclude_none=True)
    async def solve(req: SolveRequest) -> dict:
        return ops.solve_record(
            req.algo,
            graph_text=req.graph,
            expr_text=req.expr,
            td_text=req.td,
            eps=req.eps,
            budget=req.k,
            bound=req.x,
            caps=req.caps,
        )

    @app.post("/count", response_model=CountResponse)
    async def count(req: CountRequest) -> dict:
        return ops.count_record(req.expr, budget=req.k, caps=req.caps)

    @app.post("/params", response_model=ParamsResponse)
    async def params(req: ParamsRequest) -> dict:
        return ops.params_record(req.graph)

    @app.post(
        "/reduce/rubp", response_model=ReduceResponse, response_model_exclude_none=True
    )
    async def reduce_rubp(req: ReduceRequest) -> dict:
        return ops.reduce_rubp_record(req.source, caps=req.caps)

    @app.post(
        "/reduce/mc", response_model=ReduceResponse, response_model_exclude_none=True
    )
    async def reduce_mc(req: ReduceRequest) -> dict:
        return ops.reduce_mc_record(req.source, caps=req.caps)

    @app.post(
        "/verify-witness",
        response_model=VerifyResponse,
        response_model_exclude_none=True,
    )
    async def verify_witness(req: VerifyRequest) -> dict:
        return ops.verify_record(req.graph, req.deleted, budget=req.k, bound=req.x)

    @app.post("/generate", response_model=GenerateResponse)
    async def generate(req: GenerateRequest) -> dict:
        return ops.generate_record(req.n, req.p, req.seed)

    return app


app = create_app()
