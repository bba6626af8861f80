"""FastAPI service wrapping the verification toolkit.

Endpoints mirror the campaign runner one-to-one; the CLI is a thin client of
this app (in-process by default, remote with --server).  Domain errors and
bad configurations map to 400, schema violations to FastAPI's native 422.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import campaign, classes, inequalities, search, wire
from ..models import (CampaignModel, CaseModel, CheckRequest, ClassifyRequest,
                      ClassifyResponse, ClassReportModel, MWitnessModel,
                      RunReportModel, SearchRequest, SearchResultModel,
                      VerdictModel)
from ..plfunction import DomainError

API_VERSION = "1"


def create_app() -> FastAPI:
    app = FastAPI(
        title="plineq",
        description="Exact piecewise-linear verification of integral "
                    "inequalities (Chebyshev, Levin-Steckin, Clausing)",
        version=API_VERSION,
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": API_VERSION}

    @app.post("/check", response_model=VerdictModel)
    def check(request: CheckRequest) -> VerdictModel:
        try:
            decoded = wire.decode_case(request.case.model_dump())
            functions = decoded["functions"]
            if request.arithmetic == "float":
                functions = {r: f.to_float() for r, f in functions.items()}
            else:
                functions = {r: f.to_rational() for r, f in functions.items()}
            verdict = inequalities.evaluate(
                decoded["inequality"], functions,
                variant=decoded["variant"], direction=decoded["direction"],
                tol=request.tolerance)
        except (ValueError, DomainError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return VerdictModel.from_verdict(verdict)

    @app.post("/classify", response_model=ClassifyResponse)
    def classify(request: ClassifyRequest) -> ClassifyResponse:
        try:
            f = request.function.to_plfunction()
            on = None
            if request.on is not None:
                on = tuple(wire.decode_number(v) for v in request.on)
            name = request.class_name
            if name in (classes.M_PLUS, classes.M_MINUS):
                witness = classes.classify_m(f, name, tol=request.tolerance)
                return ClassifyResponse(
                    witness=MWitnessModel.from_witness(witness))
            if name == classes.CONVEX:
                report = classes.is_convex(f, on, request.tolerance)
            elif name == classes.CONCAVE:
                report = classes.is_concave(f, on, request.tolerance)
            elif name == classes.SYMMETRIC:
                report = classes.is_symmetric(f, request.tolerance)
            elif name == classes.NONNEGATIVE:
                report = classes.is_nonnegative(f, request.tolerance)
            else:
                report = classes.is_monotone_on(f, on, name,
                                                request.tolerance)
        except (ValueError, DomainError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return ClassifyResponse(report=ClassReportModel.from_report(report))

    @app.post("/campaigns/run", response_model=RunReportModel)
    def run(body: CampaignModel) -> RunReportModel:
        try:
            return campaign.run_campaign(body)
        except (ValueError, DomainError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/replay", response_model=RunReportModel)
    def replay(case: CaseModel) -> RunReportModel:
        try:
            return campaign.run_campaign(
                CampaignModel(mode="replay", case=case))
        except (ValueError, DomainError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/search", response_model=SearchResultModel)
    def run_search(request: SearchRequest) -> SearchResultModel:
        try:
            problem = search.SearchProblem(
                inequality=request.inequality,
                dropped_hypotheses=frozenset(request.dropped_hypotheses),
                n_breakpoints=request.n_breakpoints,
                budget=request.budget, seed=request.seed,
                variant=request.variant)
            result = search.minimize_margin(problem)
        except (ValueError, DomainError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return SearchResultModel.from_result(result)

    return app


app = create_app()
