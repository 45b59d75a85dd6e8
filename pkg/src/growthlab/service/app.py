"""FastAPI application exposing the growth-analysis toolkit over HTTP.

Run locally with:

    uvicorn growthlab.service.app:app --port 8000

Domain errors (bad windows, unnormalizable models, singular integrands, ...)
come back as HTTP 422 with a structured body; pydantic handles shape errors
the usual FastAPI way.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import GrowthError
from . import handlers, schemas

app = FastAPI(title="growthlab", version="0.1.0")


@app.exception_handler(GrowthError)
async def growth_error_handler(request: Request, exc: GrowthError) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={
            "error": {
                "module": exc.module,
                "type": type(exc).__name__,
                "message": str(exc),
            }
        },
    )


@app.get("/health")
async def health() -> dict:
    return {"status": "ok"}


@app.post("/rates", response_model=schemas.RatesResponse)
async def rates(req: schemas.RatesRequest) -> schemas.RatesResponse:
    return handlers.handle_rates(req)


@app.post("/fit", response_model=schemas.FitResponse)
async def fit(req: schemas.FitRequest) -> schemas.FitResponse:
    return handlers.handle_fit(req)


@app.post("/project", response_model=schemas.ProjectResponse)
async def project(req: schemas.ProjectRequest) -> schemas.ProjectResponse:
    return handlers.handle_project(req)


@app.post("/compare", response_model=schemas.CompareResponse)
async def compare(req: schemas.CompareRequest) -> schemas.CompareResponse:
    return handlers.handle_compare(req)


@app.post("/verify", response_model=schemas.VerifyResponse)
async def verify() -> schemas.VerifyResponse:
    return handlers.handle_verify()


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)
