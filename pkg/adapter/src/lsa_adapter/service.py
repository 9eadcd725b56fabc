"""Loopback HTTP facade over a model backend.

Endpoints
---------
``GET /health``
    ``{"status": "ok", "models": {"asr": ..., "tagger": ...}}``

``POST /transcribe``
    Request ``{"audio_path": str, "variant": str}``; response
    ``{"model": str, "utterances": [{"text", "start", "end"}, ...]}`` with
    utterances time-ordered and starts strictly increasing. Empty audio
    yields an empty list. 422 when the audio reference cannot be read.

``POST /tag``
    Request ``{"utterances": [[str, ...], ...], "tagset": "upos"|"stts",
    "variant": str}``; response ``{"model": str, "tags": [[str, ...], ...],
    "warnings": [str, ...]}`` where every tag row has exactly the length of
    the matching request row. 400 on an unsupported tagset.

Each logical model is guarded by its own lock, so at most one inference per
model runs at a time; concurrent callers queue on the lock.
"""

from __future__ import annotations

import threading
from collections import defaultdict

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .backends import Backend, StubBackend, TagsetMismatch, UnreadableAudio


class TranscribeRequest(BaseModel):
    audio_path: str
    variant: str = "SwissStdGerman"


class UtterancePayload(BaseModel):
    text: str
    start: float
    end: float


class TranscribeResponse(BaseModel):
    model: str
    utterances: list[UtterancePayload]


class TagRequest(BaseModel):
    utterances: list[list[str]]
    tagset: str = "upos"
    variant: str = "SwissStdGerman"


class TagResponse(BaseModel):
    model: str
    tags: list[list[str]]
    warnings: list[str] = Field(default_factory=list)


def create_app(backend: Backend | None = None) -> FastAPI:
    backend = backend if backend is not None else StubBackend()
    app = FastAPI(title="lsa-adapter", docs_url=None, redoc_url=None)
    locks: dict[str, threading.Lock] = defaultdict(threading.Lock)

    @app.get("/health")
    def health() -> dict:
        return {
            "status": "ok",
            "models": {"asr": backend.asr_model, "tagger": backend.tagger_model},
        }

    @app.post("/transcribe", response_model=TranscribeResponse)
    def transcribe(req: TranscribeRequest) -> TranscribeResponse:
        with locks[backend.asr_model]:
            try:
                drafts = backend.transcribe(req.audio_path, req.variant)
            except UnreadableAudio as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
        return TranscribeResponse(
            model=backend.asr_model,
            utterances=[
                UtterancePayload(text=d.text, start=d.start, end=d.end)
                for d in drafts
            ],
        )

    @app.post("/tag", response_model=TagResponse)
    def tag(req: TagRequest) -> TagResponse:
        warnings: list[str] = []
        with locks[backend.tagger_model]:
            try:
                tags = backend.tag(req.utterances, req.tagset, req.variant)
            except TagsetMismatch as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
        for i, (words, row) in enumerate(zip(req.utterances, tags)):
            if len(row) != len(words):
                raise HTTPException(
                    status_code=500,
                    detail=f"backend returned {len(row)} tags for "
                    f"{len(words)} words in utterance {i}",
                )
        if len(tags) != len(req.utterances):
            raise HTTPException(
                status_code=500,
                detail="backend returned wrong number of utterances",
            )
        return TagResponse(model=backend.tagger_model, tags=tags, warnings=warnings)

    return app
