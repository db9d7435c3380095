"""The adapter HTTP service: POST /parse and POST /reparse, both returning
the k-best envelope described by schemas/envelope.schema.json."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .backends import BackendError, FixtureBackend


class ParseRequest(BaseModel):
    sentence: str = Field(min_length=1)
    k: int = Field(default=3, ge=1)


class ReparseRequest(BaseModel):
    sentence: str = Field(min_length=1)
    tags: list[tuple[str, str]]
    k: int = Field(default=3, ge=1)


def create_app(backend) -> FastAPI:
    app = FastAPI(title="parse-adapter")

    @app.post("/parse")
    def parse(request: ParseRequest):
        try:
            return backend.parse(request.sentence, request.k)
        except BackendError as exc:
            raise HTTPException(status_code=exc.status, detail=str(exc))

    @app.post("/reparse")
    def reparse(request: ReparseRequest):
        try:
            return backend.reparse(request.sentence,
                                   [tuple(t) for t in request.tags],
                                   request.k)
        except BackendError as exc:
            raise HTTPException(status_code=exc.status, detail=str(exc))

    @app.get("/health")
    def health():
        return {"status": "ok",
                "backend": type(backend).__name__,
                "sentences": (backend.sentences()
                              if isinstance(backend, FixtureBackend) else None)}

    return app
