"""FastAPI service wrapping the core package.

Run with: uvicorn stackcount.service.app:app

Every endpoint is a stateless request/response wrapper over the library.
Mathematical domain errors map to 400, schema violations to 422 (FastAPI's
default), and the enumeration budget is enforced strictly: heavy censuses
are refused over HTTP (use the CLI for those).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..census import (
    BudgetExceededError,
    count_curves,
    enumerate_stratum,
    enumerate_wmin,
    verify,
)
from ..ffield import DegenerateInputError, units_by_order
from ..motive import (
    ambient_identity_check,
    inertia_wmin_motive,
    poly1_motive,
    poly_cond_motive,
    stratum_gamma_motive,
    wmin_motive,
    zeta_series,
)
from ..tate import WeierstrassModel, classify_all
from ..wls import (
    VanishingCondition,
    WeightedLinearSeries,
    height_report,
    minimalize,
)
from . import schemas

app = FastAPI(
    title="stackcount",
    version=__version__,
    description="Heights, Kodaira fibers, motives and exact point counts "
    "for weighted projective stacks over F_q(t).",
)


def _domain(call):
    try:
        return call()
    except (DegenerateInputError, BudgetExceededError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _series(req: schemas.SeriesRequest) -> WeightedLinearSeries:
    return WeightedLinearSeries.from_json(
        {"p": req.p, "weights": req.weights, "n": req.n,
         "forms": [f.model_dump() if f else None for f in req.forms]}
    )


def _model(req: schemas.ModelRequest) -> WeierstrassModel:
    return WeierstrassModel.from_json(
        {"p": req.p, "n": req.n,
         "a4": req.a4.model_dump() if req.a4 else None,
         "a6": req.a6.model_dump() if req.a6 else None}
    )


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/classify", response_model=schemas.ClassifyResponse)
def classify(req: schemas.ModelRequest):
    def run():
        model = _model(req)
        reports, summary = classify_all(model, seed=req.seed)
        hrep = height_report(model.series, require_minimal=True, seed=req.seed)
        return schemas.ClassifyResponse(
            fibers=[r.to_json() for r in reports],
            summary=summary.to_json(),
            height=hrep.to_json(),
        )

    return _domain(run)


@app.post("/minimalize", response_model=schemas.MinimalizeResponse)
def minimalize_series(req: schemas.SeriesRequest):
    def run():
        series = _series(req)
        minimal, h = minimalize(series, seed=req.seed)
        return schemas.MinimalizeResponse(
            minimal=minimal.to_json(),
            h=h.to_json(),
            defect=series.n - minimal.n,
        )

    return _domain(run)


@app.post("/height", response_model=schemas.HeightResponse)
def height(req: schemas.HeightRequest):
    def run():
        rep = height_report(_series(req), require_minimal=req.require_minimal,
                            seed=req.seed)
        return schemas.HeightResponse(**rep.to_json())

    return _domain(run)


@app.post("/motive", response_model=schemas.MotiveResponse)
def motive(req: schemas.MotiveRequest):
    def run():
        if req.kind == "wmin":
            cls = wmin_motive(tuple(req.weights or ()), req.n)
        elif req.kind == "inertia":
            if req.q is None:
                raise ValueError("q is required for the inertia motive")
            cls = inertia_wmin_motive(tuple(req.weights or ()), req.n,
                                      units_by_order(req.q))
        elif req.kind == "stratum":
            if not req.weights or len(req.weights) != 2 or not req.gamma:
                raise ValueError("stratum motives need two weights and gamma")
            gamma = VanishingCondition.parse(req.gamma)
            cls = stratum_gamma_motive(req.weights[0], req.weights[1], req.n, gamma)
        elif req.kind == "poly1":
            cls = poly1_motive(req.d1, req.d2)
        else:
            if not req.gamma:
                raise ValueError("poly motives need gamma")
            gamma = VanishingCondition.parse(req.gamma)
            cls = poly_cond_motive(gamma.shape, gamma.a, gamma.b, req.d1, req.d2)
        specialized = None
        if req.q is not None:
            specialized = {"q": req.q, "value": str(cls.specialize(req.q))}
        return schemas.MotiveResponse(
            kind=req.kind, cls=cls.to_json(), pretty=repr(cls),
            specialized=specialized,
        )

    return _domain(run)


@app.post("/zeta", response_model=schemas.ZetaResponse)
def zeta(req: schemas.ZetaRequest):
    def run():
        weights = tuple(req.weights)
        series = zeta_series(weights, req.order)
        specialized = None
        if req.q is not None:
            specialized = [str(c.specialize(req.q)) for c in series.coeffs]
        return schemas.ZetaResponse(
            weights=list(weights),
            order=req.order,
            coefficients=series.to_json(),
            pretty=[repr(c) for c in series.coeffs],
            ambient_identity=ambient_identity_check(weights, req.order),
            specialized=specialized,
        )

    return _domain(run)


@app.post("/count")
def count(req: schemas.CountRequest):
    return _domain(lambda: count_curves(req.q, req.b_exp, req.mode, req.theta).to_json())


@app.post("/census")
def census(req: schemas.CensusRequest):
    def run():
        weights = tuple(req.weights)
        if req.gamma:
            if len(weights) != 2:
                raise ValueError("stratum censuses need exactly two weights")
            gamma = VanishingCondition.parse(req.gamma)
            return enumerate_stratum(
                weights[0], weights[1], req.n, gamma, req.p, workers=req.workers
            ).to_json()
        return enumerate_wmin(weights, req.n, req.p, workers=req.workers).to_json()

    return _domain(run)


@app.post("/verify")
def run_verify(req: schemas.VerifyRequest):
    # only the core suite over HTTP; the heavy sweep is CLI territory
    report = _domain(lambda: verify(suite="core", workers=req.workers))
    out = report.to_json()
    if not req.full:
        out["cases"] = [c for c in out["cases"] if not c["match"]]
    return out
