"""Shared fixtures and small builders for the test suite."""

from __future__ import annotations

from pathlib import Path

import pytest

from lsa_workbench.annotation import (
    Speaker,
    SvaMark,
    Token,
    Transcript,
    Utterance,
    Variant,
    parse_transcript,
)
from lsa_workbench.tagsets import SttsTag, UposTag

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_path() -> Path:
    return FIXTURES / "sample_transcript.tsv"


@pytest.fixture(scope="session")
def fixture_bytes(fixture_path: Path) -> bytes:
    return fixture_path.read_bytes()


@pytest.fixture()
def fixture_transcript(fixture_bytes: bytes) -> Transcript:
    return parse_transcript(
        fixture_bytes, variant=Variant.SWISS_STD_GERMAN, recording_id="fixture"
    )


def tok(
    word_id: int,
    surface: str,
    *,
    normalized: str = "",
    lemma: str = "",
    upos: str | None = None,
    stts: str | None = None,
    contracted: bool = False,
    morph: dict[str, str] | None = None,
    sva: str = "",
    dep: str = "",
) -> Token:
    return Token(
        word_id=word_id,
        surface=surface,
        normalized=normalized,
        lemma=lemma,
        upos=UposTag(upos) if upos else None,
        stts=SttsTag(stts) if stts else None,
        stts_contracted=contracted,
        morph=morph or {},
        sva=SvaMark(sva),
        dep=dep,
    )


def utt(send_id: int, speaker: str | None, *tokens: Token) -> Utterance:
    return Utterance(
        send_id=send_id,
        speaker=Speaker(speaker) if speaker else None,
        tokens=tuple(tokens),
    )


def sep(send_id: int, speaker: str | None = "FP") -> Utterance:
    return Utterance(
        send_id=send_id,
        speaker=Speaker(speaker) if speaker else None,
        tokens=(),
        is_separator=True,
    )


def tr(*utterances: Utterance, recording_id: str = "test") -> Transcript:
    return Transcript(
        variant=Variant.SWISS_GERMAN,
        recording_id=recording_id,
        utterances=tuple(utterances),
    )


def words_utt(send_id: int, speaker: str, text: str, *, upos: str | None = None) -> Utterance:
    """Utterance from space-separated words, optionally uniformly tagged."""
    return utt(
        send_id,
        speaker,
        *(tok(i, w, upos=upos) for i, w in enumerate(text.split())),
    )
