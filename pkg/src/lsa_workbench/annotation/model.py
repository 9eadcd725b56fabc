"""Data model for annotated transcripts.

A transcript is a sequence of utterances; an utterance is a run of token
rows sharing a turn id, or a single sentence-separator record carrying no
tokens. Absent annotations are represented as None / empty values, never as
sentinel strings.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from lsa_workbench.tagsets import SttsTag, UposTag

#: Literal word used by separator records.
SENTENCE_MARK = "<sentence>"

#: Placeholder surface forms.
UNINTELLIGIBLE = "UNK"
ANONYMIZED_NAME = "NAME"


class Speaker(str, enum.Enum):
    """Participants: the examiner (FP) and the child (K)."""

    FP = "FP"
    K = "K"


class Variant(str, enum.Enum):
    """Transcription language variants."""

    SWISS_GERMAN = "SwissGerman"
    SWISS_STD_GERMAN = "SwissStdGerman"


class SvaMark(str, enum.Enum):
    """Subject-verb agreement column values.

    ``SB_V`` / ``V_SB`` mark contracted forms that fuse verb and subject in
    one token (for example "gömmer" = "gehen wir"), ordered as spoken.
    """

    NONE = ""
    SB = "sb"
    V = "v"
    SB_V = "sb_v"
    V_SB = "v_sb"


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Token:
    """One annotated word.

    ``stts_contracted`` records the "+" suffix on the fine tag (a contracted
    form whose tag applies to the base word). ``stts_was_pav`` remembers that
    the legacy PAV spelling was normalized to PROAV on input; it is excluded
    from comparisons so normalization does not break round-trip equality.
    """

    word_id: int
    surface: str
    normalized: str = ""
    lemma: str = ""
    upos: UposTag | None = None
    stts: SttsTag | None = None
    stts_contracted: bool = False
    morph: Mapping[str, str] = field(default_factory=dict)
    sva: SvaMark = SvaMark.NONE
    dep: str = ""
    stts_was_pav: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "morph", dict(self.morph))

    @property
    def is_placeholder(self) -> bool:
        return self.surface in (UNINTELLIGIBLE, ANONYMIZED_NAME)


@dataclass(frozen=True)
class Utterance:
    """A run of tokens by one speaker, or a sentence-separator record.

    ``speaker`` may be None on machine drafts whose speakers have not been
    assigned yet, and on separator records. ``separator_extras`` keeps any
    stray annotation cells found on a separator row (they are a lint error
    but must survive parsing so the linter can see them); it is excluded
    from comparisons.
    """

    send_id: int
    speaker: Speaker | None
    tokens: tuple[Token, ...] = ()
    is_separator: bool = False
    separator_extras: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if self.is_separator and self.tokens:
            raise ValueError("separator records carry no tokens")
        if not self.is_separator and not self.tokens:
            raise ValueError("utterances carry at least one token")


@dataclass(frozen=True)
class Transcript:
    variant: Variant
    recording_id: str
    utterances: tuple[Utterance, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "utterances", tuple(self.utterances))

    def iter_tokens(self) -> Iterator[tuple[Utterance, Token]]:
        for utt in self.utterances:
            for token in utt.tokens:
                yield utt, token


@dataclass(frozen=True)
class LintFinding:
    """One rule violation. ``word_id`` is None for record-level findings."""

    severity: Severity
    rule_id: str
    send_id: int
    word_id: int | None
    message: str

    @property
    def location(self) -> tuple[int, int | None]:
        return (self.send_id, self.word_id)

    def render(self) -> str:
        where = f"{self.send_id}" if self.word_id is None else f"{self.send_id}:{self.word_id}"
        return f"{self.severity.value} {self.rule_id} @ {where}: {self.message}"
