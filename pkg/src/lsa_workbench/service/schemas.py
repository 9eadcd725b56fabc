"""Request/response bodies for the local service, mirroring the TSV columns."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator

from lsa_workbench.annotation.model import (
    Speaker,
    SvaMark,
    Token,
    Transcript,
    Utterance,
    Variant,
)
from lsa_workbench.tagsets import SttsTag, UposTag


class TokenBody(BaseModel):
    word_id: int = Field(ge=0)
    word: str = Field(min_length=1)
    normalized: str = ""
    lemma: str = ""
    upos: str | None = None
    stts: str | None = None
    contracted: bool = False
    morph: dict[str, str] = Field(default_factory=dict)
    sva: str = ""
    dep: str = ""

    @field_validator("upos")
    @classmethod
    def _check_upos(cls, v: str | None) -> str | None:
        if v is not None:
            UposTag(v)
        return v

    @field_validator("stts")
    @classmethod
    def _check_stts(cls, v: str | None) -> str | None:
        if v is not None:
            SttsTag(v)
        return v

    @field_validator("sva")
    @classmethod
    def _check_sva(cls, v: str) -> str:
        SvaMark(v)
        return v

    def to_token(self) -> Token:
        return Token(
            word_id=self.word_id,
            surface=self.word,
            normalized=self.normalized,
            lemma=self.lemma,
            upos=UposTag(self.upos) if self.upos else None,
            stts=SttsTag(self.stts) if self.stts else None,
            stts_contracted=self.contracted,
            morph=self.morph,
            sva=SvaMark(self.sva),
            dep=self.dep,
        )

    @classmethod
    def from_token(cls, token: Token) -> "TokenBody":
        return cls(
            word_id=token.word_id,
            word=token.surface,
            normalized=token.normalized,
            lemma=token.lemma,
            upos=token.upos.value if token.upos else None,
            stts=token.stts.value if token.stts else None,
            contracted=token.stts_contracted,
            morph=dict(token.morph),
            sva=token.sva.value,
            dep=token.dep,
        )


class UtteranceBody(BaseModel):
    send_id: int = Field(ge=0)
    speaker: str | None = None
    separator: bool = False
    tokens: list[TokenBody] = Field(default_factory=list)

    @field_validator("speaker")
    @classmethod
    def _check_speaker(cls, v: str | None) -> str | None:
        if v is not None:
            Speaker(v)
        return v

    def to_utterance(self) -> Utterance:
        return Utterance(
            send_id=self.send_id,
            speaker=Speaker(self.speaker) if self.speaker else None,
            tokens=tuple(t.to_token() for t in self.tokens),
            is_separator=self.separator,
        )

    @classmethod
    def from_utterance(cls, utt: Utterance) -> "UtteranceBody":
        return cls(
            send_id=utt.send_id,
            speaker=utt.speaker.value if utt.speaker else None,
            separator=utt.is_separator,
            tokens=[TokenBody.from_token(t) for t in utt.tokens],
        )


def utterances_to_transcript(
    utterances: list[UtteranceBody], variant: Variant, recording_id: str
) -> Transcript:
    return Transcript(
        variant=variant,
        recording_id=recording_id,
        utterances=tuple(u.to_utterance() for u in utterances),
    )


class ProjectCreateBody(BaseModel):
    name: str = Field(min_length=1, max_length=200)


class TranscriptImportBody(BaseModel):
    transcript_id: str | None = Field(default=None, pattern=r"^[A-Za-z0-9_-]{1,64}$")
    variant: Variant = Variant.SWISS_GERMAN
    recording_id: str = ""
    content: str | None = None
    utterances: list[UtteranceBody] | None = None
    edited_by: str = "import"


class TranscriptPutBody(BaseModel):
    base_revision: int = Field(ge=1)
    edited_by: str = "editor"
    utterances: list[UtteranceBody]


class TranscribeBody(BaseModel):
    audio_path: str
    variant: Variant = Variant.SWISS_GERMAN
    transcript_id: str | None = Field(default=None, pattern=r"^[A-Za-z0-9_-]{1,64}$")
    recording_id: str = ""


class TagBody(BaseModel):
    base_revision: int = Field(ge=1)
    tagset: Literal["upos", "stts"] = "upos"
    form: Literal["original", "normalized"] = "original"
    edited_by: str = "adapter"


class AudioRefBody(BaseModel):
    name: str = Field(pattern=r"^[A-Za-z0-9_.-]{1,128}$")
    path: str


class AnalyzeBody(BaseModel):
    """Free-form dict validated by the analysis config itself."""

    config: dict[str, Any] = Field(default_factory=dict)
