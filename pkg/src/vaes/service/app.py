"""FastAPI wiring around the pure handlers."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .handlers import (
    ComputationError,
    handle_catalog,
    handle_classify,
    handle_solve,
    handle_verify,
)
from .schemas import (
    CatalogResponse,
    ClassifyRequest,
    ClassifyResponse,
    SolveRequest,
    SolveResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="vaes",
        description="vector annihilation-operator eigenstates over a "
        "boson-spin product space",
        version="0.1.0",
    )

    @app.post("/classify", response_model=ClassifyResponse)
    def classify(req: ClassifyRequest) -> ClassifyResponse:
        return handle_classify(req)

    @app.post("/solve", response_model=SolveResponse)
    def solve(req: SolveRequest) -> SolveResponse:
        try:
            return handle_solve(req)
        except ComputationError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except (ValueError, KeyError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        try:
            return handle_verify(req)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/catalog", response_model=CatalogResponse)
    def catalog() -> CatalogResponse:
        return handle_catalog()

    return app
