"""Consistency rules for annotated transcripts.

Every rule has a stable id, a fixed severity, and a one-line description.
``lint_transcript`` applies the core rules R1-R6; template-based morphology
review (warnings M1/M2) is opt-in because partially annotated morphology is
legitimate working state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from lsa_workbench.annotation.model import (
    ANONYMIZED_NAME,
    UNINTELLIGIBLE,
    LintFinding,
    Severity,
    SvaMark,
    Token,
    Transcript,
    Utterance,
)
from lsa_workbench.tagsets import (
    SttsTag,
    UposTag,
    check_morph_legality,
    validate_morph,
)


@dataclass(frozen=True)
class LintRule:
    rule_id: str
    severity: Severity
    description: str


RULES: dict[str, LintRule] = {
    r.rule_id: r
    for r in (
        LintRule("R1", Severity.ERROR, "UNK placeholders must be tagged X (coarse) / XY (fine)"),
        LintRule("R2", Severity.ERROR, "NAME placeholders must be tagged PROPN (coarse) / NE (fine)"),
        LintRule("R3", Severity.WARNING, "legacy PAV spelling; PROAV is required and was substituted"),
        LintRule("R4", Severity.ERROR, "separator records must carry no annotations"),
        LintRule("R5", Severity.ERROR, "morphology keys and values must come from the legal table"),
        LintRule("R6", Severity.ERROR, "fused agreement marks (sb_v/v_sb) require the contraction flag"),
        LintRule("M1", Severity.WARNING, "morphology key not expected for the tag's template"),
        LintRule("M2", Severity.WARNING, "template morphology key not annotated"),
    )
}


def _finding(rule_id: str, send_id: int, word_id: int | None, message: str) -> LintFinding:
    rule = RULES[rule_id]
    return LintFinding(rule.severity, rule_id, send_id, word_id, message)


def _check_token(utt: Utterance, token: Token) -> Iterator[LintFinding]:
    sid, wid = utt.send_id, token.word_id

    if token.surface == UNINTELLIGIBLE:
        if token.upos is not None and token.upos is not UposTag.X:
            yield _finding("R1", sid, wid, f"UNK tagged {token.upos.value}, expected X")
        if token.stts is not None and token.stts is not SttsTag.XY:
            yield _finding("R1", sid, wid, f"UNK tagged {token.stts.value}, expected XY")

    if token.surface == ANONYMIZED_NAME:
        if token.upos is not None and token.upos is not UposTag.PROPN:
            yield _finding("R2", sid, wid, f"NAME tagged {token.upos.value}, expected PROPN")
        if token.stts is not None and token.stts is not SttsTag.NE:
            yield _finding("R2", sid, wid, f"NAME tagged {token.stts.value}, expected NE")

    if token.stts_was_pav:
        yield _finding("R3", sid, wid, "tag written as PAV; stored as PROAV")

    for item in check_morph_legality(token.morph):
        yield _finding("R5", sid, wid, item.message)

    if token.sva in (SvaMark.SB_V, SvaMark.V_SB) and not token.stts_contracted:
        yield _finding(
            "R6", sid, wid,
            f"agreement mark {token.sva.value} on a token whose fine tag lacks the '+' contraction flag",
        )


def _check_templates(utt: Utterance, token: Token) -> Iterator[LintFinding]:
    if token.stts is None:
        return
    for item in validate_morph(token.stts, token.morph):
        if item.severity != "warning":
            continue  # legality errors already covered by R5
        rule_id = "M1" if item.code == "morph-unexpected" else "M2"
        yield _finding(rule_id, utt.send_id, token.word_id, item.message)


def lint_transcript(transcript: Transcript, *, check_templates: bool = False) -> list[LintFinding]:
    """Apply the rule table; returns findings in document order.

    Linting never mutates and is idempotent: equal inputs yield equal
    finding lists.
    """
    findings: list[LintFinding] = []
    for utt in transcript.utterances:
        if utt.is_separator:
            if utt.separator_extras:
                findings.append(
                    _finding(
                        "R4", utt.send_id, None,
                        "separator record carries annotation cells: "
                        + ", ".join(repr(c) for c in utt.separator_extras),
                    )
                )
            continue
        for token in utt.tokens:
            findings.extend(_check_token(utt, token))
            if check_templates:
                findings.extend(_check_templates(utt, token))
    return findings
