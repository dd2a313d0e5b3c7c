"""FastAPI service exposing every verification as an endpoint.

Every check is pure and idempotent, so the service is safe for concurrent
clients. Error mapping: bad input (unknown group key, malformed signature)
-> 400; an internal exactness violation (e.g. a Dunkl reflection term that
fails to divide) -> 500 with a diagnostic payload.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, checks
from ..dunkl import InconsistentReflectionData
from ..polys import ExactDivisionError
from . import schemas

app = FastAPI(
    title="cherednik-verify",
    version=__version__,
    description="Exact verification of Dunkl/PBW/monodromy/Hecke claims",
)


@app.exception_handler(checks.UsageError)
async def usage_error_handler(request: Request, exc: checks.UsageError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": "usage", "detail": str(exc)})


@app.exception_handler(InconsistentReflectionData)
async def inconsistency_handler(request: Request, exc: InconsistentReflectionData) -> JSONResponse:
    return JSONResponse(
        status_code=500, content={"error": "internal-inconsistency", "detail": str(exc)}
    )


@app.exception_handler(ExactDivisionError)
async def division_handler(request: Request, exc: ExactDivisionError) -> JSONResponse:
    return JSONResponse(
        status_code=500, content={"error": "internal-inconsistency", "detail": str(exc)}
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/verify/dunkl", response_model=schemas.VerificationReport)
def verify_dunkl(req: schemas.DunklRequest):
    return checks.check_dunkl(req.group, req.deg)


@app.post("/verify/pbw", response_model=schemas.VerificationReport)
def verify_pbw(req: schemas.PbwRequest):
    return checks.check_pbw(req.group, req.deg)


@app.post("/verify/euler", response_model=schemas.VerificationReport)
def verify_euler(req: schemas.EulerRequest):
    return checks.check_euler(req.group)


@app.post("/verify/satake", response_model=schemas.VerificationReport)
def verify_satake(req: schemas.SatakeRequest):
    return checks.check_satake(req.group, req.deg)


@app.post("/verify/consistency", response_model=schemas.VerificationReport)
def verify_consistency(req: schemas.ConsistencyRequest):
    return checks.check_consistency(req.group, req.pairs, req.max_len, req.deg, req.seed)


@app.post("/verify/quasi", response_model=schemas.VerificationReport)
def verify_quasi(req: schemas.QuasiRequest):
    return checks.check_quasi(req.m, req.deg)


@app.post("/verify/all", response_model=list[schemas.VerificationReport])
def verify_all(req: schemas.AllRequest):
    return checks.run_all(
        quick=req.quick, seed=req.seed, steps=req.steps, tol=req.tol, workers=req.workers
    )


@app.post("/kz/monodromy", response_model=schemas.VerificationReport)
def kz_monodromy(req: schemas.MonodromyRequest):
    return checks.check_kz_monodromy(req.n, req.c, req.eta, req.steps, req.tol)


@app.post("/kz/tau", response_model=schemas.VerificationReport)
def kz_tau(req: schemas.TauRequest):
    return checks.check_kz_tau(req.n, req.c, req.eta)


@app.post("/kz/roots", response_model=schemas.VerificationReport)
def kz_roots(req: schemas.RootsRequest):
    return checks.check_kz_roots(req.n)


@app.post("/hecke/dim", response_model=schemas.VerificationReport)
def hecke_dim(req: schemas.HeckeDimRequest):
    return checks.check_hecke_dim(req.kind, req.n, req.trunc)


@app.post("/hecke/obstruction", response_model=schemas.VerificationReport)
def hecke_obstruction(req: schemas.ObstructionRequest):
    return checks.check_hecke_obstruction(req.signature)


@app.post("/hecke/group", response_model=schemas.VerificationReport)
def hecke_group(req: schemas.SignatureRequest):
    return checks.check_hecke_group(req.signature, req.max_cosets)


@app.post("/hecke/verdict", response_model=schemas.VerificationReport)
def hecke_verdict(req: schemas.SignatureRequest):
    return checks.check_hecke_verdict(req.signature, req.max_cosets)
