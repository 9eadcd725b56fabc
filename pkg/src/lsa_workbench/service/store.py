"""Plain-file persistence for projects, transcripts, and reports.

Layout under the data directory:

    projects/<project_id>/project.json
    projects/<project_id>/transcripts/<transcript_id>.tsv
    projects/<project_id>/transcripts/<transcript_id>.meta.json
    projects/<project_id>/reports/<report_id>.json

Transcript bytes are always the canonical TSV serialization. Writes go
through a temp file + atomic replace and are serialized by a process-wide
lock; reads take no lock. Optimistic concurrency: every accepted edit
increments the revision by one, and writers must present the revision they
based their edit on.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from lsa_workbench.annotation.model import Transcript, Variant
from lsa_workbench.annotation.parse import parse_transcript
from lsa_workbench.annotation.serialize import serialize_transcript


class StoreError(Exception):
    pass


class NotFoundError(StoreError):
    pass


class RevisionConflictError(StoreError):
    def __init__(self, current_revision: int):
        self.current_revision = current_revision
        super().__init__(f"stale revision; current is {current_revision}")


@dataclass(frozen=True)
class TranscriptMeta:
    transcript_id: str
    revision: int
    variant: Variant
    recording_id: str
    edited_by: str
    draft: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "transcript_id": self.transcript_id,
            "revision": self.revision,
            "variant": self.variant.value,
            "recording_id": self.recording_id,
            "edited_by": self.edited_by,
            "draft": self.draft,
        }

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "TranscriptMeta":
        return cls(
            transcript_id=raw["transcript_id"],
            revision=raw["revision"],
            variant=Variant(raw["variant"]),
            recording_id=raw.get("recording_id", ""),
            edited_by=raw.get("edited_by", ""),
            draft=raw.get("draft", False),
        )


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _write_json(path: Path, obj: Any) -> None:
    _atomic_write(path, (json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n").encode("utf-8"))


def _new_id() -> str:
    return uuid.uuid4().hex[:12]


class ProjectStore:
    def __init__(self, data_dir: str | Path):
        self.base = Path(data_dir)
        (self.base / "projects").mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()

    # -- paths ---------------------------------------------------------

    def _project_dir(self, project_id: str) -> Path:
        return self.base / "projects" / project_id

    def _project_file(self, project_id: str) -> Path:
        return self._project_dir(project_id) / "project.json"

    def _tsv_path(self, project_id: str, transcript_id: str) -> Path:
        return self._project_dir(project_id) / "transcripts" / f"{transcript_id}.tsv"

    def _meta_path(self, project_id: str, transcript_id: str) -> Path:
        return self._project_dir(project_id) / "transcripts" / f"{transcript_id}.meta.json"

    # -- projects ------------------------------------------------------

    def create_project(self, name: str) -> dict[str, Any]:
        with self._lock:
            project_id = _new_id()
            pdir = self._project_dir(project_id)
            (pdir / "transcripts").mkdir(parents=True)
            (pdir / "reports").mkdir()
            manifest = {"project_id": project_id, "name": name, "audio": {}}
            _write_json(self._project_file(project_id), manifest)
            return manifest

    def get_project(self, project_id: str) -> dict[str, Any]:
        path = self._project_file(project_id)
        if not path.exists():
            raise NotFoundError(f"project {project_id!r} not found")
        return json.loads(path.read_text("utf-8"))

    def list_projects(self) -> list[dict[str, Any]]:
        out = []
        for pdir in sorted((self.base / "projects").iterdir()):
            manifest = pdir / "project.json"
            if manifest.exists():
                out.append(json.loads(manifest.read_text("utf-8")))
        return out

    def register_audio(self, project_id: str, name: str, path: str) -> dict[str, Any]:
        with self._lock:
            manifest = self.get_project(project_id)
            manifest["audio"][name] = path
            _write_json(self._project_file(project_id), manifest)
            return manifest

    # -- transcripts ---------------------------------------------------

    def list_transcripts(self, project_id: str) -> list[TranscriptMeta]:
        self.get_project(project_id)
        tdir = self._project_dir(project_id) / "transcripts"
        metas = []
        for meta_file in sorted(tdir.glob("*.meta.json")):
            metas.append(TranscriptMeta.from_dict(json.loads(meta_file.read_text("utf-8"))))
        return metas

    def read_meta(self, project_id: str, transcript_id: str) -> TranscriptMeta:
        self.get_project(project_id)
        path = self._meta_path(project_id, transcript_id)
        if not path.exists():
            raise NotFoundError(f"transcript {transcript_id!r} not found")
        return TranscriptMeta.from_dict(json.loads(path.read_text("utf-8")))

    def read_transcript(self, project_id: str, transcript_id: str) -> tuple[TranscriptMeta, Transcript, bytes]:
        meta = self.read_meta(project_id, transcript_id)
        raw = self._tsv_path(project_id, transcript_id).read_bytes()
        transcript = parse_transcript(raw, variant=meta.variant, recording_id=meta.recording_id)
        return meta, transcript, raw

    def create_transcript(
        self,
        project_id: str,
        transcript: Transcript,
        *,
        transcript_id: str | None = None,
        edited_by: str = "import",
        draft: bool = False,
    ) -> TranscriptMeta:
        with self._lock:
            self.get_project(project_id)
            tid = transcript_id or _new_id()
            if self._meta_path(project_id, tid).exists():
                raise StoreError(f"transcript {tid!r} already exists")
            meta = TranscriptMeta(
                transcript_id=tid,
                revision=1,
                variant=transcript.variant,
                recording_id=transcript.recording_id,
                edited_by=edited_by,
                draft=draft,
            )
            _atomic_write(self._tsv_path(project_id, tid), serialize_transcript(transcript))
            _write_json(self._meta_path(project_id, tid), meta.to_dict())
            return meta

    def update_transcript(
        self,
        project_id: str,
        transcript_id: str,
        transcript: Transcript,
        *,
        base_revision: int,
        edited_by: str,
        draft: bool | None = None,
    ) -> TranscriptMeta:
        with self._lock:
            current = self.read_meta(project_id, transcript_id)
            if base_revision != current.revision:
                raise RevisionConflictError(current.revision)
            meta = TranscriptMeta(
                transcript_id=transcript_id,
                revision=current.revision + 1,
                variant=transcript.variant,
                recording_id=transcript.recording_id,
                edited_by=edited_by,
                draft=current.draft if draft is None else draft,
            )
            _atomic_write(self._tsv_path(project_id, transcript_id), serialize_transcript(transcript))
            _write_json(self._meta_path(project_id, transcript_id), meta.to_dict())
            return meta

    # -- reports -------------------------------------------------------

    def save_report(self, project_id: str, body: dict[str, Any]) -> str:
        with self._lock:
            self.get_project(project_id)
            report_id = _new_id()
            body = dict(body)
            body["report_id"] = report_id
            _write_json(self._project_dir(project_id) / "reports" / f"{report_id}.json", body)
            return report_id

    def list_reports(self, project_id: str) -> list[dict[str, Any]]:
        self.get_project(project_id)
        rdir = self._project_dir(project_id) / "reports"
        out = []
        for path in sorted(rdir.glob("*.json")):
            raw = json.loads(path.read_text("utf-8"))
            out.append(
                {
                    "report_id": raw.get("report_id", path.stem),
                    "transcript_id": raw.get("transcript_id"),
                    "revision": raw.get("revision"),
                }
            )
        return out

    def read_report(self, project_id: str, report_id: str) -> dict[str, Any]:
        self.get_project(project_id)
        path = self._project_dir(project_id) / "reports" / f"{report_id}.json"
        if not path.exists():
            raise NotFoundError(f"report {report_id!r} not found")
        return json.loads(path.read_text("utf-8"))
