"""Loopback HTTP service: projects, revisioned transcripts, analyses.

The service is a thin shell over the library modules: every response body
can be reproduced by calling the module functions directly on the stored
files. Model inference is proxied to a separate adapter process, which must
also live on the loopback interface unless explicitly overridden.
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from contextlib import asynccontextmanager
from typing import Any
from urllib.parse import urlparse

import httpx
from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import FileResponse, JSONResponse, PlainTextResponse
from pathlib import Path

from lsa_workbench import __version__
from lsa_workbench.analysis import AnalysisConfig, ConfigError, build_report
from lsa_workbench.annotation import (
    AnnotationParseError,
    Severity,
    Speaker,
    SvaMark,
    Token,
    Transcript,
    Utterance,
    lint_transcript,
    parse_transcript,
    serialize_text,
)
from lsa_workbench.annotation.views import FORMS
from lsa_workbench.service.schemas import (
    AnalyzeBody,
    AudioRefBody,
    ProjectCreateBody,
    TagBody,
    TokenBody,
    TranscribeBody,
    TranscriptImportBody,
    TranscriptPutBody,
    UtteranceBody,
    utterances_to_transcript,
)
from lsa_workbench.service.store import (
    NotFoundError,
    ProjectStore,
    RevisionConflictError,
    StoreError,
    TranscriptMeta,
)
from lsa_workbench.tagsets import (
    MORPH_VALUES,
    STTS_ORDER,
    SttsTag,
    UPOS_ORDER,
    UposTag,
)

LOOPBACK_HOSTS = {"127.0.0.1", "localhost", "::1"}


class AdapterUnavailableError(Exception):
    pass


def ensure_loopback_url(url: str, *, allow_remote: bool = False) -> str:
    host = urlparse(url).hostname
    if host is None:
        raise ValueError(f"adapter URL {url!r} has no host")
    if not allow_remote and host not in LOOPBACK_HOSTS:
        raise ValueError(
            f"adapter URL {url!r} is not loopback; pass allow_remote explicitly to override"
        )
    return url.rstrip("/")


class AdapterClient:
    """HTTP client for the inference adapter."""

    def __init__(self, base_url: str, timeout: float = 120.0):
        self.base_url = base_url.rstrip("/")
        self._client = httpx.Client(timeout=timeout)

    def _post(self, path: str, payload: dict[str, Any]) -> dict[str, Any]:
        try:
            response = self._client.post(self.base_url + path, json=payload)
        except httpx.HTTPError as exc:
            raise AdapterUnavailableError(f"adapter unreachable: {exc}") from None
        if response.status_code >= 500:
            raise AdapterUnavailableError(f"adapter error {response.status_code}")
        if response.status_code >= 400:
            raise HTTPException(status_code=502, detail=f"adapter rejected request: {response.text}")
        return response.json()

    def transcribe(self, audio_path: str, variant: str) -> dict[str, Any]:
        return self._post("/transcribe", {"audio_path": audio_path, "variant": variant})

    def tag(self, utterances: list[list[str]], tagset: str, variant: str) -> dict[str, Any]:
        return self._post("/tag", {"utterances": utterances, "tagset": tagset, "variant": variant})

    def close(self) -> None:
        self._client.close()


def _draft_from_texts(texts: list[str], variant, recording_id: str) -> Transcript:
    utterances = []
    send_id = 0
    for text in texts:
        words = text.split()
        if not words:
            continue
        # normalized stays empty: the corrected form is an editor task,
        # and views fall back to the surface until it is filled in.
        tokens = tuple(Token(word_id=i, surface=w) for i, w in enumerate(words))
        utterances.append(Utterance(send_id=send_id, speaker=None, tokens=tokens))
        send_id += 1
    return Transcript(variant=variant, recording_id=recording_id, utterances=tuple(utterances))


def _apply_tags(
    transcript: Transcript, tags: list[list[str]], tagset: str
) -> tuple[Transcript, list[str]]:
    """Merge predicted tags into a transcript; unknown tags become X / XY."""
    warnings: list[str] = []
    spoken = [u for u in transcript.utterances if not u.is_separator]
    if len(tags) != len(spoken):
        raise HTTPException(status_code=502, detail="adapter returned wrong utterance count")
    new_utterances: list[Utterance] = []
    tag_iter = iter(tags)
    for utt in transcript.utterances:
        if utt.is_separator:
            new_utterances.append(utt)
            continue
        utt_tags = next(tag_iter)
        if len(utt_tags) != len(utt.tokens):
            raise HTTPException(status_code=502, detail="adapter returned wrong tag count")
        new_tokens = []
        for token, raw_tag in zip(utt.tokens, utt_tags):
            contracted = token.stts_contracted
            tag = raw_tag
            if tag.endswith("+"):
                contracted = True
                tag = tag[:-1]
            updates: dict[str, Any] = {}
            if tagset == "upos":
                try:
                    updates["upos"] = UposTag(tag)
                except ValueError:
                    updates["upos"] = UposTag.X
                    warnings.append(
                        f"unknown coarse tag {raw_tag!r} at {utt.send_id}:{token.word_id}, stored X"
                    )
            else:
                try:
                    updates["stts"] = SttsTag(tag)
                except ValueError:
                    updates["stts"] = SttsTag.XY
                    warnings.append(
                        f"unknown fine tag {raw_tag!r} at {utt.send_id}:{token.word_id}, stored XY"
                    )
                updates["stts_contracted"] = contracted
            new_tokens.append(
                Token(
                    word_id=token.word_id,
                    surface=token.surface,
                    normalized=token.normalized,
                    lemma=token.lemma,
                    upos=updates.get("upos", token.upos),
                    stts=updates.get("stts", token.stts),
                    stts_contracted=updates.get("stts_contracted", token.stts_contracted),
                    morph=token.morph,
                    sva=token.sva,
                    dep=token.dep,
                )
            )
        new_utterances.append(
            Utterance(send_id=utt.send_id, speaker=utt.speaker, tokens=tuple(new_tokens))
        )
    return (
        Transcript(
            variant=transcript.variant,
            recording_id=transcript.recording_id,
            utterances=tuple(new_utterances),
        ),
        warnings,
    )


def _meta_payload(meta: TranscriptMeta) -> dict[str, Any]:
    return meta.to_dict()


def _transcript_payload(meta: TranscriptMeta, transcript: Transcript) -> dict[str, Any]:
    payload = _meta_payload(meta)
    payload["utterances"] = [
        UtteranceBody.from_utterance(u).model_dump() for u in transcript.utterances
    ]
    payload["tsv"] = serialize_text(transcript)
    return payload


def create_app(
    data_dir: str | Path,
    *,
    adapter_url: str = "http://127.0.0.1:8091",
    allow_remote_adapter: bool = False,
    adapter_client: AdapterClient | None = None,
) -> FastAPI:
    """Build the service app rooted at ``data_dir``.

    ``adapter_client`` is injectable for tests; by default an HTTP client
    for ``adapter_url`` (validated to be loopback) is created.
    """
    if adapter_client is None:
        adapter_url = ensure_loopback_url(adapter_url, allow_remote=allow_remote_adapter)
        adapter = AdapterClient(adapter_url)
    else:
        adapter = adapter_client

    store = ProjectStore(data_dir)
    executor = ThreadPoolExecutor(max_workers=2)
    jobs: dict[str, dict[str, Any]] = {}
    jobs_lock = threading.Lock()

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        yield
        executor.shutdown(wait=False, cancel_futures=True)
        adapter.close()

    app = FastAPI(title="lsa-workbench service", version=__version__, lifespan=lifespan)

    @app.exception_handler(NotFoundError)
    async def _not_found(_, exc: NotFoundError):
        return JSONResponse(status_code=404, content={"error": "not-found", "message": str(exc)})

    @app.exception_handler(RevisionConflictError)
    async def _conflict(_, exc: RevisionConflictError):
        return JSONResponse(
            status_code=409,
            content={
                "error": "revision-conflict",
                "message": str(exc),
                "current_revision": exc.current_revision,
            },
        )

    @app.exception_handler(AnnotationParseError)
    async def _parse_error(_, exc: AnnotationParseError):
        return JSONResponse(
            status_code=422,
            content={"error": type(exc).__name__, "message": str(exc), "line": exc.line},
        )

    @app.exception_handler(AdapterUnavailableError)
    async def _adapter_down(_, exc: AdapterUnavailableError):
        return JSONResponse(
            status_code=503, content={"error": "adapter-unavailable", "message": str(exc)}
        )

    @app.exception_handler(ConfigError)
    async def _bad_config(_, exc: ConfigError):
        return JSONResponse(status_code=422, content={"error": "bad-config", "message": str(exc)})

    @app.exception_handler(StoreError)
    async def _store_error(_, exc: StoreError):
        return JSONResponse(status_code=400, content={"error": "store", "message": str(exc)})

    # -- meta ------------------------------------------------------------

    @app.get("/health")
    def health() -> dict[str, Any]:
        return {"status": "ok", "version": __version__, "adapter_url": adapter.base_url if isinstance(adapter, AdapterClient) else "injected"}

    @app.get("/tagsets")
    def tagsets() -> dict[str, Any]:
        return {
            "upos": [t.value for t in UPOS_ORDER],
            "stts": [t.value for t in STTS_ORDER if t is not SttsTag.PAV],
            "sva": [m.value for m in SvaMark if m.value],
            "speakers": [s.value for s in Speaker],
            "forms": list(FORMS),
            "morph": {k: sorted(v) for k, v in MORPH_VALUES.items()},
        }

    # -- projects --------------------------------------------------------

    @app.post("/projects", status_code=201)
    def create_project(body: ProjectCreateBody) -> dict[str, Any]:
        return store.create_project(body.name)

    @app.get("/projects")
    def list_projects() -> list[dict[str, Any]]:
        return store.list_projects()

    @app.get("/projects/{project_id}")
    def get_project(project_id: str) -> dict[str, Any]:
        manifest = store.get_project(project_id)
        manifest["transcripts"] = [m.to_dict() for m in store.list_transcripts(project_id)]
        return manifest

    @app.post("/projects/{project_id}/audio", status_code=201)
    def register_audio(project_id: str, body: AudioRefBody) -> dict[str, Any]:
        return store.register_audio(project_id, body.name, body.path)

    @app.get("/projects/{project_id}/audio/{name}")
    def get_audio(project_id: str, name: str) -> FileResponse:
        manifest = store.get_project(project_id)
        path = manifest["audio"].get(name)
        if path is None or not Path(path).exists():
            raise NotFoundError(f"audio {name!r} not found")
        return FileResponse(path)

    # -- transcripts -----------------------------------------------------

    @app.post("/projects/{project_id}/transcripts", status_code=201)
    def import_transcript(project_id: str, body: TranscriptImportBody) -> dict[str, Any]:
        if (body.content is None) == (body.utterances is None):
            raise HTTPException(
                status_code=422, detail="provide exactly one of 'content' or 'utterances'"
            )
        if body.content is not None:
            transcript = parse_transcript(
                body.content, variant=body.variant, recording_id=body.recording_id
            )
        else:
            transcript = utterances_to_transcript(
                body.utterances or [], body.variant, body.recording_id
            )
        meta = store.create_transcript(
            project_id, transcript, transcript_id=body.transcript_id, edited_by=body.edited_by
        )
        return _meta_payload(meta)

    @app.get("/projects/{project_id}/transcripts/{transcript_id}")
    def get_transcript(project_id: str, transcript_id: str) -> dict[str, Any]:
        meta, transcript, _ = store.read_transcript(project_id, transcript_id)
        return _transcript_payload(meta, transcript)

    @app.put("/projects/{project_id}/transcripts/{transcript_id}")
    def put_transcript(
        project_id: str, transcript_id: str, body: TranscriptPutBody
    ) -> dict[str, Any]:
        meta = store.read_meta(project_id, transcript_id)
        transcript = utterances_to_transcript(body.utterances, meta.variant, meta.recording_id)
        new_meta = store.update_transcript(
            project_id,
            transcript_id,
            transcript,
            base_revision=body.base_revision,
            edited_by=body.edited_by,
            draft=False,
        )
        return _meta_payload(new_meta)

    @app.get("/projects/{project_id}/transcripts/{transcript_id}/lint")
    def lint(
        project_id: str, transcript_id: str, templates: bool = Query(default=False)
    ) -> dict[str, Any]:
        _, transcript, _ = store.read_transcript(project_id, transcript_id)
        findings = lint_transcript(transcript, check_templates=templates)
        errors = sum(1 for f in findings if f.severity is Severity.ERROR)
        return {
            "errors": errors,
            "warnings": len(findings) - errors,
            "findings": [
                {
                    "severity": f.severity.value,
                    "rule": f.rule_id,
                    "send_id": f.send_id,
                    "word_id": f.word_id,
                    "message": f.message,
                }
                for f in findings
            ]
        }

    # -- adapter proxies ---------------------------------------------------

    @app.post("/projects/{project_id}/transcribe", status_code=201)
    def transcribe(project_id: str, body: TranscribeBody) -> dict[str, Any]:
        store.get_project(project_id)
        result = adapter.transcribe(body.audio_path, body.variant.value)
        texts = [u.get("text", "") for u in result.get("utterances", [])]
        transcript = _draft_from_texts(texts, body.variant, body.recording_id)
        meta = store.create_transcript(
            project_id,
            transcript,
            transcript_id=body.transcript_id,
            edited_by=f"adapter:{result.get('model', 'unknown')}",
            draft=True,
        )
        payload = _meta_payload(meta)
        payload["model"] = result.get("model")
        payload["utterance_count"] = len(transcript.utterances)
        return payload

    @app.post("/projects/{project_id}/transcripts/{transcript_id}/tag")
    def tag(project_id: str, transcript_id: str, body: TagBody) -> dict[str, Any]:
        meta, transcript, _ = store.read_transcript(project_id, transcript_id)
        if body.base_revision != meta.revision:
            raise RevisionConflictError(meta.revision)
        words = [
            [
                (t.normalized or t.surface) if body.form == "normalized" else t.surface
                for t in utt.tokens
            ]
            for utt in transcript.utterances
            if not utt.is_separator
        ]
        result = adapter.tag(words, body.tagset, meta.variant.value)
        tagged, warnings = _apply_tags(transcript, result.get("tags", []), body.tagset)
        new_meta = store.update_transcript(
            project_id,
            transcript_id,
            tagged,
            base_revision=body.base_revision,
            edited_by=f"adapter:{result.get('model', 'unknown')}",
        )
        payload = _meta_payload(new_meta)
        payload["model"] = result.get("model")
        payload["warnings"] = warnings + list(result.get("warnings", []))
        return payload

    # -- analysis ----------------------------------------------------------

    def _run_analysis(job_id: str, project_id: str, transcript_id: str, cfg: AnalysisConfig) -> None:
        with jobs_lock:
            jobs[job_id]["status"] = "running"
        try:
            meta, transcript, _ = store.read_transcript(project_id, transcript_id)
            report = build_report(transcript, cfg)
            report_id = store.save_report(
                project_id,
                {
                    "transcript_id": transcript_id,
                    "revision": meta.revision,
                    "body": report.body,
                    "text": report.to_text(),
                },
            )
            with jobs_lock:
                jobs[job_id]["status"] = "done"
                jobs[job_id]["report_id"] = report_id
        except Exception as exc:  # noqa: BLE001 - job boundary
            with jobs_lock:
                jobs[job_id]["status"] = "failed"
                jobs[job_id]["error"] = f"{type(exc).__name__}: {exc}"

    @app.post("/projects/{project_id}/transcripts/{transcript_id}/analyze", status_code=202)
    def analyze(project_id: str, transcript_id: str, body: AnalyzeBody) -> dict[str, Any]:
        store.read_meta(project_id, transcript_id)  # 404 before queueing
        cfg = AnalysisConfig.from_dict(body.config)
        job_id = uuid.uuid4().hex[:12]
        with jobs_lock:
            jobs[job_id] = {
                "job_id": job_id,
                "status": "queued",
                "project_id": project_id,
                "transcript_id": transcript_id,
            }
        executor.submit(_run_analysis, job_id, project_id, transcript_id, cfg)
        return {"job_id": job_id, "status": "queued"}

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str) -> dict[str, Any]:
        with jobs_lock:
            job = jobs.get(job_id)
            if job is None:
                raise NotFoundError(f"job {job_id!r} not found")
            return dict(job)

    @app.get("/projects/{project_id}/reports")
    def list_reports(project_id: str) -> list[dict[str, Any]]:
        return store.list_reports(project_id)

    @app.get("/projects/{project_id}/reports/{report_id}")
    def get_report(project_id: str, report_id: str) -> dict[str, Any]:
        return store.read_report(project_id, report_id)

    @app.get("/projects/{project_id}/reports/{report_id}/text")
    def get_report_text(project_id: str, report_id: str) -> PlainTextResponse:
        report = store.read_report(project_id, report_id)
        return PlainTextResponse(report.get("text", ""))

    return app
