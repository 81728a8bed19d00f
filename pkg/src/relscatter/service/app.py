"""FastAPI application exposing the scattering engine.

Run with::

    uvicorn relscatter.service.app:app

Domain errors (invalid particle, profile, or singular interface systems)
map to 400 with the violated invariant in the detail string; schema errors
are FastAPI's usual 422.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Response

from ..core import InvalidParticleError, InvalidProfileError
from ..matcher import SingularSystemError
from . import api
from .schemas import (
    FiguresRequest,
    FiguresResponse,
    ScatterRequest,
    ScatterResponse,
    SweepRequest,
    SweepResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="relscatter",
    description="Relativistic 1-D scattering off piecewise-constant potentials",
    version="0.1.0",
)

_DOMAIN_ERRORS = (InvalidParticleError, InvalidProfileError, SingularSystemError, ValueError)


def _guard(fn, *args):
    try:
        return fn(*args)
    except _DOMAIN_ERRORS as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok"}


@app.post("/scatter", response_model=ScatterResponse)
def scatter(req: ScatterRequest) -> ScatterResponse:
    return _guard(api.do_scatter, req)


@app.post("/sweep", response_model=SweepResponse)
def sweep(req: SweepRequest) -> SweepResponse:
    return _guard(api.do_sweep, req)


@app.post("/sweep/csv")
def sweep_csv(req: SweepRequest) -> Response:
    text = _guard(api.do_sweep_csv, req)
    return Response(content=text, media_type="text/csv; charset=utf-8")


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    return _guard(api.do_verify, req)


@app.post("/figures", response_model=FiguresResponse)
def figures(req: FiguresRequest) -> FiguresResponse:
    return _guard(api.do_figures, req)
