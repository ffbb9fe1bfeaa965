"""FastAPI service wrapping the core package.

Every operation is a stateless request/response pair: classify a group from
its generator strings, sweep a catalog family, compute the chirality
invariant of one element, or run the named verification claims.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import __version__, reports, verify
from ..group import MaxOrderExceeded, TrichotomyViolation
from .schemas import (
    ClassifyRequest,
    HealthResponse,
    InvariantRequest,
    InvariantResponse,
    Report,
    SweepRequest,
    SweepResponse,
    VerifyRequest,
    VerifyResponse,
)

TRICHOTOMY_ERROR_CODE = "trichotomy-violation"


def create_app() -> FastAPI:
    app = FastAPI(title="orthosym", version=__version__)

    @app.exception_handler(TrichotomyViolation)
    async def _trichotomy_handler(_, exc: TrichotomyViolation):
        return JSONResponse(status_code=500, content={"code": TRICHOTOMY_ERROR_CODE, "detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/classify", response_model=Report, response_model_by_alias=True)
    def classify_endpoint(req: ClassifyRequest):
        try:
            return reports.classify_report(req.name, req.generators, req.max_order)
        except (reports.ReportInputError, MaxOrderExceeded) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/sweep", response_model=SweepResponse, response_model_by_alias=True)
    def sweep_endpoint(req: SweepRequest):
        try:
            return reports.sweep_response(req.family, req.ranges, req.expect_paper)
        except reports.ReportInputError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/invariant", response_model=InvariantResponse, response_model_by_alias=True)
    def invariant_endpoint(req: InvariantRequest):
        try:
            return reports.invariant_report(req.element)
        except reports.ReportInputError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/verify-paper", response_model=VerifyResponse, response_model_by_alias=True)
    def verify_endpoint(req: VerifyRequest):
        try:
            results = verify.run_claims(req.only)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {
            "schema": 1,
            "claims": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
            "all_passed": all(r.passed for r in results),
        }

    return app


app = create_app()
