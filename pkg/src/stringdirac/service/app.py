"""FastAPI application exposing the solver.

Domain errors are translated to a stable JSON envelope

    {"error": {"code": ..., "message": ...}}

so clients can map them to exit codes without parsing prose.  Table
endpoints accept ?format=csv and then return exactly the text the
rendering layer produces.
"""

from __future__ import annotations

import math
from dataclasses import asdict
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse

from ..errors import (
    ConvergenceError,
    DegenerateBranchError,
    EvanescentEnergyError,
    InvalidParameterError,
    NoBoundStateError,
)
from ..fdsolver import OracleConfig, cross_validate
from ..params import derive_quantities
from ..spectrum import (
    build_bound_state,
    node_count,
    spectrum_rows,
    surface_grid,
)
from ..tables import (
    json_clean,
    spectrum_csv,
    surface_csv,
    wavefunction_csv,
)
from ..verify import run_verify
from . import schemas

app = FastAPI(title="stringdirac service", version="1.0.0")

FormatName = Literal["json", "csv"]


def _error_response(status: int, code: str, message: str, **extra) -> JSONResponse:
    body = {"error": {"code": code, "message": message}}
    body["error"].update(json_clean(extra))
    return JSONResponse(status_code=status, content=body)


@app.exception_handler(RequestValidationError)
async def _on_request_validation(request: Request, exc: RequestValidationError):
    detail = "; ".join(
        f"{'.'.join(str(p) for p in err.get('loc', ()))}: {err.get('msg', '')}"
        for err in exc.errors()
    )
    return _error_response(422, "validation_error", detail)


@app.exception_handler(InvalidParameterError)
async def _on_invalid(request: Request, exc: InvalidParameterError):
    return _error_response(422, "validation_error", str(exc))


@app.exception_handler(ValueError)
async def _on_value_error(request: Request, exc: ValueError):
    return _error_response(422, "validation_error", str(exc))


@app.exception_handler(NoBoundStateError)
async def _on_unbound(request: Request, exc: NoBoundStateError):
    return _error_response(
        422, "no_bound_state", str(exc), threshold_energy=exc.threshold_energy
    )


@app.exception_handler(EvanescentEnergyError)
async def _on_evanescent(request: Request, exc: EvanescentEnergyError):
    return _error_response(422, "no_bound_state", str(exc))


@app.exception_handler(DegenerateBranchError)
async def _on_degenerate(request: Request, exc: DegenerateBranchError):
    return _error_response(422, "degenerate_branch", str(exc))


@app.exception_handler(ConvergenceError)
async def _on_convergence(request: Request, exc: ConvergenceError):
    return _error_response(500, "convergence_failure", str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "service": "stringdirac", "version": app.version}


@app.post("/derive", response_model=schemas.DerivedResponse)
def derive(req: schemas.DeriveRequest) -> schemas.DerivedResponse:
    bg, cp, qn = req.params.split()
    dq = derive_quantities(bg, cp, qn)
    return schemas.DerivedResponse(j=qn.j, omega=cp.omega, **asdict(dq))


@app.post("/spectrum")
def spectrum(req: schemas.SpectrumRequest, format: FormatName = "json"):
    bg, cp, qn = req.params.split()
    n_max = req.n_max if req.n_max is not None else qn.n
    rows = spectrum_rows(bg, cp, m=qn.m, k=qn.k, n_max=n_max, mode=req.params.mode)
    if format == "csv":
        return PlainTextResponse(spectrum_csv(rows), media_type="text/csv")
    models = [
        schemas.SpectrumRowModel(
            n=r.n,
            m=r.m,
            k=r.k,
            delta=r.delta,
            B=r.coulomb,
            eta=r.eta,
            E_plus=None if math.isnan(r.energy_plus) else r.energy_plus,
            E_minus=None if math.isnan(r.energy_minus) else r.energy_minus,
            bound_flag=1 if r.bound else 0,
        )
        for r in rows
    ]
    return schemas.SpectrumResponse(mode=req.params.mode, rows=models)


@app.post("/wavefunction")
def wavefunction(req: schemas.WavefunctionRequest, format: FormatName = "json"):
    bg, cp, qn = req.params.split()
    n_points = req.grid_n if req.grid_n % 2 == 1 else req.grid_n + 1
    state = build_bound_state(
        bg, cp, qn, mode=req.params.mode, n_points=n_points, r_max=req.r_max
    )
    if format == "csv":
        return PlainTextResponse(wavefunction_csv(state), media_type="text/csv")
    return schemas.WavefunctionResponse(
        mode=req.params.mode,
        eta=state.pair.eta,
        E_plus=state.pair.energy_plus,
        E_minus=state.pair.energy_minus,
        norm_constant=state.norm_constant,
        node_count_lower=node_count(state.y_lower),
        r=[float(x) for x in state.r],
        y_lower=[float(x) for x in state.y_lower.values],
        y_upper=[float(x) for x in state.y_upper.values],
    )


@app.post("/surface")
def surface(req: schemas.SurfaceRequest, format: FormatName = "json"):
    bg, cp, qn = req.params.split()
    result = surface_grid(
        bg,
        cp,
        qn,
        axes=(req.axes[0], req.axes[1]),
        range1=tuple(req.range1) if req.range1 else None,
        range2=tuple(req.range2) if req.range2 else None,
        res1=req.res1,
        res2=req.res2,
        mode=req.params.mode,
    )
    if format == "csv":
        return PlainTextResponse(surface_csv(result), media_type="text/csv")
    clean = json_clean(
        {
            "E_plus": result.energy_plus,
            "E_minus": result.energy_minus,
        }
    )
    return schemas.SurfaceResponse(
        axis1=result.axis1,
        axis2=result.axis2,
        values1=[float(x) for x in result.values1],
        values2=[float(x) for x in result.values2],
        E_plus=clean["E_plus"],
        E_minus=clean["E_minus"],
        flag=[[1 if b else 0 for b in row] for row in result.bound],
    )


@app.post("/oracle", response_model=schemas.OracleResponse)
def oracle(req: schemas.OracleRequest) -> schemas.OracleResponse:
    bg, cp, qn = req.params.split()
    m_values = req.m_values if req.m_values is not None else [qn.m]
    cfg = OracleConfig(n_points=req.oracle_points, n_eigen=req.n_eigen,
                       r_max=req.r_max)
    rep = cross_validate(
        bg, cp, m_values=m_values, k=qn.k, cfg=cfg, tolerance=req.tolerance
    )
    return schemas.OracleResponse(
        tolerance=rep.tolerance,
        levels=[schemas.OracleLevelModel(**asdict(lv)) for lv in rep.levels],
        skipped=rep.skipped,
        passed=rep.passed,
    )


@app.post("/verify", response_model=schemas.VerifyResponse)
def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    report = run_verify(
        suites=req.suites,
        seed=req.seed,
        oracle_points=req.oracle_points,
        algebra_points=req.algebra_points,
    )
    return schemas.VerifyResponse(**report)
