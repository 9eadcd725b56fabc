"""Model backends.

A backend turns an audio reference into utterance drafts, and token lists
into tag lists. The shipped ``StubBackend`` needs no ML runtime: it reads
transcription text from the audio file (or a ``.txt`` sidecar next to it)
and tags tokens with a deterministic lexicon-and-suffix heuristic. Real
model wrappers implement the same protocol and drop in via configuration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol, Sequence


class AdapterError(Exception):
    pass


class UnreadableAudio(AdapterError):
    """The referenced audio payload cannot be opened."""


class TagsetMismatch(AdapterError):
    """The backend does not produce the requested tag set."""


@dataclass(frozen=True)
class UtteranceDraft:
    text: str
    start: float
    end: float


class Backend(Protocol):
    """What the HTTP layer needs from a model pair."""

    asr_model: str
    tagger_model: str

    def transcribe(self, audio_path: str, variant: str) -> list[UtteranceDraft]: ...

    def tag(
        self, utterances: Sequence[Sequence[str]], tagset: str, variant: str
    ) -> list[list[str]]: ...


# Deterministic tagging tables for the stub. Closed-class words first, then
# suffix heuristics, then a noun/proper-noun guess from casing.
_LEXICON_UPOS = {
    "der": "DET", "die": "DET", "das": "DET", "de": "DET", "en": "DET",
    "es": "PRON", "du": "PRON", "ich": "PRON", "er": "PRON", "sie": "PRON",
    "mir": "PRON", "dir": "PRON", "wir": "PRON",
    "und": "CCONJ", "oder": "CCONJ", "aber": "CCONJ",
    "weil": "SCONJ", "dass": "SCONJ", "wenn": "SCONJ",
    "in": "ADP", "im": "ADP", "auf": "ADP", "an": "ADP", "mit": "ADP",
    "zu": "ADP", "vo": "ADP", "bi": "ADP",
    "nicht": "PART", "nid": "PART", "ja": "PART", "nein": "PART", "nei": "PART",
    "da": "ADV", "dann": "ADV", "denn": "ADV", "so": "ADV", "auch": "ADV",
    "hier": "ADV", "dort": "ADV", "mal": "ADV",
    "ist": "AUX", "is": "AUX", "sind": "AUX", "war": "AUX", "warst": "AUX",
    "hat": "AUX", "hät": "AUX", "kann": "AUX", "chan": "AUX", "muss": "AUX",
    "will": "AUX", "wird": "AUX",
    "ähm": "INTJ", "äh": "INTJ", "hm": "INTJ", "oh": "INTJ",
    "eins": "NUM", "zwei": "NUM", "drei": "NUM", "vier": "NUM", "fünf": "NUM",
}

_LEXICON_STTS = {
    "der": "ART", "die": "ART", "das": "ART", "de": "ART", "en": "ART",
    "es": "PPER", "du": "PPER", "ich": "PPER", "er": "PPER", "sie": "PPER",
    "mir": "PPER", "dir": "PPER", "wir": "PPER",
    "und": "KON", "oder": "KON", "aber": "KON",
    "weil": "KOUS", "dass": "KOUS", "wenn": "KOUS",
    "in": "APPR", "im": "APPRART", "auf": "APPR", "an": "APPR", "mit": "APPR",
    "zu": "APPR", "vo": "APPR", "bi": "APPR",
    "nicht": "PTKNEG", "nid": "PTKNEG", "ja": "PTKANT", "nein": "PTKANT",
    "nei": "PTKANT",
    "da": "ADV", "dann": "ADV", "denn": "ADV", "so": "ADV", "auch": "ADV",
    "hier": "ADV", "dort": "ADV", "mal": "ADV",
    "ist": "VAFIN", "is": "VAFIN", "sind": "VAFIN", "war": "VAFIN",
    "warst": "VAFIN", "hat": "VAFIN", "hät": "VAFIN", "kann": "VMFIN",
    "chan": "VMFIN", "muss": "VMFIN", "will": "VMFIN", "wird": "VAFIN",
    "ähm": "ITJ", "äh": "ITJ", "hm": "ITJ", "oh": "ITJ",
    "eins": "CARD", "zwei": "CARD", "drei": "CARD", "vier": "CARD",
    "fünf": "CARD",
}

_PUNCT = re.compile(r"^\W+$", re.UNICODE)
_VERB_ENDINGS = ("en", "e", "t", "st", "le", "ieren", "sch")


def _guess_upos(word: str) -> str:
    lowered = word.lower()
    if _PUNCT.match(word):
        return "PUNCT"
    if lowered in _LEXICON_UPOS:
        return _LEXICON_UPOS[lowered]
    if word[:1].isupper():
        return "PROPN"
    if lowered.endswith(_VERB_ENDINGS) and len(lowered) > 3:
        return "VERB"
    if lowered.endswith(("ig", "lich", "isch", "bar")):
        return "ADJ"
    return "NOUN"


def _guess_stts(word: str) -> str:
    lowered = word.lower()
    if _PUNCT.match(word):
        return "$." if word in (".", "?", "!") else "$,"
    if lowered in _LEXICON_STTS:
        return _LEXICON_STTS[lowered]
    if word[:1].isupper():
        return "NE"
    if lowered.endswith(_VERB_ENDINGS) and len(lowered) > 3:
        return "VVFIN"
    if lowered.endswith(("ig", "lich", "isch", "bar")):
        return "ADJD"
    return "NN"


@dataclass
class StubBackend:
    """No-runtime backend for development and contract testing.

    Transcription reads UTF-8 text, one utterance per non-empty line, from
    ``<audio_path>.txt`` when that sidecar exists, otherwise from the audio
    path itself. Timestamps are synthesized at a fixed speaking rate so the
    utterances are time-ordered with non-overlapping starts.
    """

    asr_model: str = "stub-whisper-small"
    tagger_model: str = "stub-pos-tagger"
    seconds_per_word: float = 0.4
    gap_seconds: float = 0.1
    extra_lexicon: dict[str, str] = field(default_factory=dict)

    def _read_source(self, audio_path: str) -> str:
        path = Path(audio_path)
        sidecar = Path(str(path) + ".txt")
        source = sidecar if sidecar.is_file() else path
        if not source.is_file():
            raise UnreadableAudio(f"no readable payload at {audio_path!r}")
        try:
            return source.read_text("utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise UnreadableAudio(f"cannot read {source}: {exc}") from exc

    def transcribe(self, audio_path: str, variant: str) -> list[UtteranceDraft]:
        text = self._read_source(audio_path)
        drafts: list[UtteranceDraft] = []
        clock = 0.0
        for line in text.splitlines():
            words = line.split()
            if not words:
                continue
            duration = max(self.seconds_per_word, len(words) * self.seconds_per_word)
            drafts.append(
                UtteranceDraft(
                    text=" ".join(words),
                    start=round(clock, 3),
                    end=round(clock + duration, 3),
                )
            )
            clock += duration + self.gap_seconds
        return drafts

    def tag(
        self, utterances: Sequence[Sequence[str]], tagset: str, variant: str
    ) -> list[list[str]]:
        if tagset == "upos":
            guess = _guess_upos
        elif tagset == "stts":
            guess = _guess_stts
        else:
            raise TagsetMismatch(f"unsupported tagset {tagset!r}")
        tagged = []
        for words in utterances:
            tagged.append(
                [self.extra_lexicon.get(w.lower(), None) or guess(w) for w in words]
            )
        return tagged
