"""Clinical language-sample measures.

All ratio-valued measures return exact fractions; rendering to fixed-point
strings happens only at the report boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from lsa_workbench.analysis.config import AnalysisConfig
from lsa_workbench.annotation.model import (
    Speaker,
    SvaMark,
    Token,
    Transcript,
    UNINTELLIGIBLE,
    Utterance,
)
from lsa_workbench.asr.normalize import is_punctuation_token
from lsa_workbench.tagsets import (
    STTS_PUNCT_TAGS,
    STTS_VERB_TAGS,
    SttsTag,
    UposTag,
)


class AnalysisError(ValueError):
    pass


class NoUtterancesError(AnalysisError):
    def __init__(self, speaker: Speaker):
        self.speaker = speaker
        super().__init__(f"no utterances for speaker {speaker.value}")


class EmptySelectionError(AnalysisError):
    pass


def _is_punctuation(token: Token) -> bool:
    if token.upos is not None or token.stts is not None:
        return token.upos is UposTag.PUNCT or token.stts in STTS_PUNCT_TAGS
    return is_punctuation_token(token.surface)


def _is_interjection(token: Token) -> bool:
    return token.upos is UposTag.INTJ or token.stts is SttsTag.ITJ


def _is_maze(token: Token) -> bool:
    return token.upos is UposTag.X or token.stts is SttsTag.XY


def token_excluded(token: Token, cfg: AnalysisConfig) -> bool:
    if cfg.excludes("punctuation") and _is_punctuation(token):
        return True
    if cfg.excludes("placeholders") and token.surface == UNINTELLIGIBLE:
        return True
    if cfg.excludes("interjections") and _is_interjection(token):
        return True
    if cfg.excludes("mazes") and _is_maze(token):
        return True
    return False


def included_tokens(utt: Utterance, cfg: AnalysisConfig) -> list[Token]:
    return [t for t in utt.tokens if not token_excluded(t, cfg)]


def _speaker_utterances(t: Transcript, cfg: AnalysisConfig, speaker: Speaker) -> list[Utterance]:
    out = []
    for utt in t.utterances:
        if utt.is_separator and cfg.excludes("separator_records"):
            continue
        if utt.speaker is speaker:
            out.append(utt)
    return out


@dataclass(frozen=True)
class MluResult:
    speaker: Speaker
    utterance_count: int
    token_count: int
    value: Fraction


def mlu_for_speaker(t: Transcript, cfg: AnalysisConfig, speaker: Speaker) -> MluResult:
    """Mean length of utterance in words.

    Utterances that end up empty after exclusions are dropped from the
    denominator; separator records count as zero-length utterances only when
    they are not excluded.
    """
    utterances = _speaker_utterances(t, cfg, speaker)
    if not utterances:
        raise NoUtterancesError(speaker)
    lengths: list[int] = []
    for utt in utterances:
        if utt.is_separator:
            lengths.append(0)
            continue
        kept = len(included_tokens(utt, cfg))
        if kept > 0:
            lengths.append(kept)
    if not lengths:
        raise NoUtterancesError(speaker)
    return MluResult(
        speaker=speaker,
        utterance_count=len(lengths),
        token_count=sum(lengths),
        value=Fraction(sum(lengths), len(lengths)),
    )


def mlu(t: Transcript, cfg: AnalysisConfig) -> dict[Speaker, MluResult]:
    return {s: mlu_for_speaker(t, cfg, s) for s in cfg.speakers}


@dataclass(frozen=True)
class PosDistribution:
    speaker: Speaker
    counts: Mapping[str, int]
    frequencies: Mapping[str, Fraction]
    untagged: int
    total_tagged: int


def pos_distribution(t: Transcript, cfg: AnalysisConfig) -> dict[Speaker, PosDistribution]:
    """Relative tag frequencies per speaker over included tokens.

    Frequencies are over tagged tokens only and sum to exactly 1 whenever
    any tagged token exists; untagged tokens are counted separately.
    """
    out: dict[Speaker, PosDistribution] = {}
    for speaker in cfg.speakers:
        counts: dict[str, int] = {}
        untagged = 0
        for utt in _speaker_utterances(t, cfg, speaker):
            for token in included_tokens(utt, cfg):
                tag = token.upos if cfg.tagset == "upos" else token.stts
                if tag is None:
                    untagged += 1
                else:
                    counts[tag.value] = counts.get(tag.value, 0) + 1
        total = sum(counts.values())
        freqs = {label: Fraction(n, total) for label, n in counts.items()} if total else {}
        out[speaker] = PosDistribution(
            speaker=speaker,
            counts=counts,
            frequencies=freqs,
            untagged=untagged,
            total_tagged=total,
        )
    return out


@dataclass(frozen=True)
class SvaRecord:
    """A pairing of subject and verb marks inside one utterance.

    A contracted record comes from one fused token (marks sb_v / v_sb); the
    token appears on both sides but counts as one mark. ``flag`` is None for
    complete records, else "missing-subject" or "missing-verb".
    """

    send_id: int
    speaker: Speaker | None
    subject_tokens: tuple[Token, ...]
    verb_tokens: tuple[Token, ...]
    contracted: bool

    @property
    def flag(self) -> str | None:
        if self.contracted:
            return None
        if not self.subject_tokens:
            return "missing-subject"
        if not self.verb_tokens:
            return "missing-verb"
        return None

    @property
    def mark_count(self) -> int:
        if self.contracted:
            return 1
        return len(self.subject_tokens) + len(self.verb_tokens)

    def _side_values(self, tokens: tuple[Token, ...], key: str) -> set[str]:
        return {t.morph[key] for t in tokens if key in t.morph}

    @property
    def agreement_checkable(self) -> bool:
        """True when both sides pin down one Number and one Person."""
        if self.flag is not None:
            return False
        if self.contracted:
            token = self.subject_tokens[0]
            return "Number" in token.morph and "Person" in token.morph
        for key in ("Number", "Person"):
            for side in (self.subject_tokens, self.verb_tokens):
                values = self._side_values(side, key)
                if len(values) != 1:
                    return False
        return True

    @property
    def agreement_ok(self) -> bool | None:
        """True/False when checkable, else None. Contractions agree with themselves."""
        if not self.agreement_checkable:
            return None
        if self.contracted:
            return True
        for key in ("Number", "Person"):
            if self._side_values(self.subject_tokens, key) != self._side_values(self.verb_tokens, key):
                return False
        return True


def _utterance_sva_records(utt: Utterance) -> list[SvaRecord]:
    records: list[SvaRecord] = []
    subject: list[Token] = []
    verbs: list[Token] = []
    last_side: str | None = None

    def close() -> None:
        nonlocal subject, verbs, last_side
        if subject or verbs:
            records.append(
                SvaRecord(
                    send_id=utt.send_id,
                    speaker=utt.speaker,
                    subject_tokens=tuple(subject),
                    verb_tokens=tuple(verbs),
                    contracted=False,
                )
            )
        subject, verbs, last_side = [], [], None

    for token in utt.tokens:
        mark = token.sva
        if mark is SvaMark.NONE:
            continue
        if mark in (SvaMark.SB_V, SvaMark.V_SB):
            close()
            records.append(
                SvaRecord(
                    send_id=utt.send_id,
                    speaker=utt.speaker,
                    subject_tokens=(token,),
                    verb_tokens=(token,),
                    contracted=True,
                )
            )
        elif mark is SvaMark.SB:
            if subject and last_side == "v":
                close()
            subject.append(token)
            last_side = "sb"
        else:  # SvaMark.V
            if verbs and last_side == "sb":
                close()
            verbs.append(token)
            last_side = "v"
    close()
    return records


def sva_pairs(t: Transcript) -> tuple[SvaRecord, ...]:
    """Subject-verb records across the whole transcript, in document order.

    Consecutive marks of one kind extend the current record's side; moving
    back to an already-filled side closes the record and opens the next one.
    Every mark lands in exactly one record, so unmatched marks surface as
    flagged one-sided records rather than disappearing.
    """
    records: list[SvaRecord] = []
    for utt in t.utterances:
        if not utt.is_separator:
            records.extend(_utterance_sva_records(utt))
    return tuple(records)


@dataclass(frozen=True)
class LexicalDiversity:
    types: int
    tokens: int
    ttr: Fraction


def lexical_diversity(t: Transcript, cfg: AnalysisConfig) -> LexicalDiversity:
    """Type-token ratio over lowercased normalized forms after exclusions."""
    forms: list[str] = []
    for speaker in cfg.speakers:
        for utt in _speaker_utterances(t, cfg, speaker):
            for token in included_tokens(utt, cfg):
                forms.append((token.normalized or token.surface).lower())
    if not forms:
        raise EmptySelectionError("no tokens selected for lexical diversity")
    return LexicalDiversity(
        types=len(set(forms)),
        tokens=len(forms),
        ttr=Fraction(len(set(forms)), len(forms)),
    )


@dataclass(frozen=True)
class VerbEntry:
    send_id: int
    speaker: Speaker
    word_id: int
    surface: str
    normalized: str
    lemma: str
    stts: str
    contracted: bool
    morph: Mapping[str, str]


def verb_overview(t: Transcript, cfg: AnalysisConfig) -> tuple[VerbEntry, ...]:
    """Every verb token (fine tags V*) of the selected speakers, in order."""
    out: list[VerbEntry] = []
    for utt in t.utterances:
        if utt.is_separator or utt.speaker not in cfg.speakers:
            continue
        for token in included_tokens(utt, cfg):
            if token.stts in STTS_VERB_TAGS:
                out.append(
                    VerbEntry(
                        send_id=utt.send_id,
                        speaker=utt.speaker,
                        word_id=token.word_id,
                        surface=token.surface,
                        normalized=token.normalized,
                        lemma=token.lemma,
                        stts=token.stts.value,
                        contracted=token.stts_contracted,
                        morph=dict(token.morph),
                    )
                )
    return tuple(out)
