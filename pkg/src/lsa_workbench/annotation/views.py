"""Projections from annotated transcripts to plain word sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterable

from lsa_workbench.annotation.model import Speaker, Transcript

FORMS = ("original", "normalized")


@dataclass(frozen=True)
class ProjectedUtterance:
    send_id: int
    speaker: Speaker | None
    words: tuple[str, ...]


def project_view(
    transcript: Transcript,
    *,
    form: str = "original",
    speakers: Collection[Speaker] | None = None,
) -> list[ProjectedUtterance]:
    """Word sequences per utterance, in transcript order.

    ``form`` picks the surface ("original") or the normalized spelling
    ("normalized"; falls back to the surface where no normalization was
    recorded). Separator records are skipped. ``speakers=None`` keeps every
    utterance including ones with unassigned speakers.
    """
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    wanted = None if speakers is None else set(speakers)
    out: list[ProjectedUtterance] = []
    for utt in transcript.utterances:
        if utt.is_separator:
            continue
        if wanted is not None and utt.speaker not in wanted:
            continue
        if form == "original":
            words = tuple(t.surface for t in utt.tokens)
        else:
            words = tuple(t.normalized or t.surface for t in utt.tokens)
        out.append(ProjectedUtterance(utt.send_id, utt.speaker, words))
    return out


def flatten_words(projected: Iterable[ProjectedUtterance]) -> list[str]:
    """All words of a projection as one sequence, in order."""
    flat: list[str] = []
    for utt in projected:
        flat.extend(utt.words)
    return flat
