"""FastAPI application exposing report, iso and congruence endpoints.

Domain errors map onto HTTP statuses the CLI client understands: invalid
mathematical input is 400, a tripped enumeration guard is 413. Response
bodies come straight from the report module, so the service and the
in-process CLI path emit identical JSON for identical input.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import EnumerationGuardError, InvalidMatrixError
from ..parsing import matrix_from_entry_grid, parse_rational
from ..report import build_report, congruence_payload, iso_payload
from .schemas import (
    CongruenceRequest,
    CongruenceResponse,
    HealthResponse,
    IsoRequest,
    IsoResponse,
    ReportRequest,
    ReportResponse,
)

__all__ = ["create_app"]


def create_app() -> FastAPI:
    app = FastAPI(title="ncsphere", version="0.1.0")

    @app.exception_handler(InvalidMatrixError)
    async def invalid_input(request: Request, exc: InvalidMatrixError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(EnumerationGuardError)
    async def guard_breach(request: Request, exc: EnumerationGuardError) -> JSONResponse:
        return JSONResponse(status_code=413, content={"detail": str(exc)})

    @app.get("/healthz", response_model=HealthResponse)
    async def healthz() -> HealthResponse:
        return HealthResponse(status="ok")

    @app.post("/report", response_model=ReportResponse)
    async def report(body: ReportRequest) -> ReportResponse:
        theta = matrix_from_entry_grid(body.entries, body.n)
        rep = build_report(
            theta,
            kind=body.kind,
            n_tensor=body.n_tensor,
            faces_mode=body.faces,
            with_oracle=body.oracle,
            max_bits=body.max_bits,
        )
        return ReportResponse(**rep.to_dict())

    @app.post("/iso", response_model=IsoResponse)
    async def iso(body: IsoRequest) -> IsoResponse:
        payload = iso_payload(
            body.kind,
            parse_rational(body.theta),
            body.n,
            parse_rational(body.theta_prime),
            body.n_prime,
        )
        return IsoResponse(**payload)

    @app.post("/congruence", response_model=CongruenceResponse)
    async def congruence(body: CongruenceRequest) -> CongruenceResponse:
        a = matrix_from_entry_grid(body.entries)
        b = matrix_from_entry_grid(body.entries_prime)
        return CongruenceResponse(**congruence_payload(a, b))

    return app
