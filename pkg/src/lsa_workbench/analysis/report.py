"""Composed analysis report with deterministic JSON and text rendering.

Reports carry no timestamps and render ratios as 3-decimal fixed-point
strings (banker's rounding) computed from exact fractions, so the same
transcript and config always produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Any

from lsa_workbench.analysis.config import AnalysisConfig
from lsa_workbench.analysis.measures import (
    EmptySelectionError,
    NoUtterancesError,
    lexical_diversity,
    mlu_for_speaker,
    pos_distribution,
    sva_pairs,
    verb_overview,
)
from lsa_workbench.annotation.model import Transcript


def format_ratio(value: Fraction, places: int = 3) -> str:
    """Exact fraction -> fixed-point string, ties to even."""
    with localcontext() as ctx:
        ctx.prec = 60
        quant = Decimal(1).scaleb(-places)
        dec = (Decimal(value.numerator) / Decimal(value.denominator)).quantize(
            quant, rounding=ROUND_HALF_EVEN
        )
    return str(dec)


@dataclass(frozen=True)
class AnalysisReport:
    """A finished analysis as a plain JSON-able dictionary."""

    body: dict[str, Any]

    def to_json(self) -> str:
        return json.dumps(self.body, ensure_ascii=False, sort_keys=True, indent=2) + "\n"

    def to_json_bytes(self) -> bytes:
        return self.to_json().encode("utf-8")

    def to_text(self) -> str:
        return render_text(self.body)


def build_report(t: Transcript, cfg: AnalysisConfig) -> AnalysisReport:
    """Run every measure; per-speaker failures become section notes, not errors."""
    body: dict[str, Any] = {
        "config": cfg.to_dict(),
        "recording_id": t.recording_id,
        "variant": t.variant.value,
    }

    mlu_section: dict[str, Any] = {"unit": "words per utterance", "per_speaker": {}}
    for speaker in cfg.speakers:
        try:
            result = mlu_for_speaker(t, cfg, speaker)
        except NoUtterancesError:
            mlu_section["per_speaker"][speaker.value] = {"error": "no utterances"}
            continue
        mlu_section["per_speaker"][speaker.value] = {
            "mlu": format_ratio(result.value),
            "tokens": result.token_count,
            "utterances": result.utterance_count,
        }
    body["mlu"] = mlu_section

    pos_section: dict[str, Any] = {"tagset": cfg.tagset, "per_speaker": {}}
    for speaker, dist in pos_distribution(t, cfg).items():
        pos_section["per_speaker"][speaker.value] = {
            "counts": dict(sorted(dist.counts.items())),
            "frequencies": {
                label: format_ratio(freq) for label, freq in sorted(dist.frequencies.items())
            },
            "total_tagged": dist.total_tagged,
            "untagged": dist.untagged,
        }
    body["pos_distribution"] = pos_section

    wanted = set(cfg.speakers)
    sva_section = []
    for record in sva_pairs(t):
        if record.speaker not in wanted:
            continue
        sva_section.append(
            {
                "send_id": record.send_id,
                "speaker": record.speaker.value if record.speaker else None,
                "subject": [tok.normalized or tok.surface for tok in record.subject_tokens],
                "subject_ids": [tok.word_id for tok in record.subject_tokens],
                "verbs": [tok.normalized or tok.surface for tok in record.verb_tokens],
                "verb_ids": [tok.word_id for tok in record.verb_tokens],
                "contracted": record.contracted,
                "checkable": record.agreement_checkable,
                "match": record.agreement_ok,
                "flag": record.flag,
            }
        )
    body["sva"] = sva_section

    try:
        lex = lexical_diversity(t, cfg)
        body["lexical_diversity"] = {
            "types": lex.types,
            "tokens": lex.tokens,
            "ttr": format_ratio(lex.ttr),
        }
    except EmptySelectionError:
        body["lexical_diversity"] = {"error": "empty selection"}

    body["verb_overview"] = [
        {
            "send_id": v.send_id,
            "speaker": v.speaker.value,
            "word_id": v.word_id,
            "surface": v.surface,
            "normalized": v.normalized,
            "lemma": v.lemma,
            "stts": v.stts + ("+" if v.contracted else ""),
            "morph": dict(sorted(v.morph.items())),
        }
        for v in verb_overview(t, cfg)
    ]

    return AnalysisReport(body=body)


def _speaker_lines(section: dict[str, Any], render) -> list[str]:
    lines = []
    for speaker in sorted(section):
        lines.extend(render(speaker, section[speaker]))
    return lines


def render_text(body: dict[str, Any]) -> str:
    lines: list[str] = []
    lines.append(f"Analysis report for recording {body['recording_id'] or '(unnamed)'}")
    lines.append(f"Variant: {body['variant']}")
    cfg = body["config"]
    lines.append(
        "Config: speakers=" + ",".join(cfg["speakers"])
        + f" form={cfg['form']} tagset={cfg['tagset']}"
        + " exclude=" + (",".join(cfg["exclude"]) or "(none)")
    )

    lines.append("")
    lines.append(f"MLU ({body['mlu']['unit']})")
    for speaker, entry in sorted(body["mlu"]["per_speaker"].items()):
        if "error" in entry:
            lines.append(f"  {speaker}: {entry['error']}")
        else:
            lines.append(
                f"  {speaker}: {entry['mlu']}"
                f" ({entry['tokens']} words / {entry['utterances']} utterances)"
            )

    lines.append("")
    lines.append(f"Tag distribution ({body['pos_distribution']['tagset']})")
    for speaker, entry in sorted(body["pos_distribution"]["per_speaker"].items()):
        lines.append(
            f"  {speaker}: {entry['total_tagged']} tagged, {entry['untagged']} untagged"
        )
        for label, freq in entry["frequencies"].items():
            lines.append(f"    {label:<8} {freq}  (n={entry['counts'][label]})")

    lines.append("")
    lines.append("Subject-verb pairs")
    if not body["sva"]:
        lines.append("  (none)")
    for rec in body["sva"]:
        subject = " ".join(rec["subject"]) or "-"
        verbs = " ".join(rec["verbs"]) or "-"
        status = "contracted" if rec["contracted"] else (rec["flag"] or "paired")
        verdict = {True: "agree", False: "DISAGREE", None: "unchecked"}[rec["match"]]
        lines.append(
            f"  [{rec['send_id']}] {rec['speaker']}: subject={subject} verb={verbs}"
            f" ({status}, {verdict})"
        )

    lines.append("")
    lex = body["lexical_diversity"]
    if "error" in lex:
        lines.append(f"Lexical diversity: {lex['error']}")
    else:
        lines.append(
            f"Lexical diversity: {lex['types']} types / {lex['tokens']} tokens"
            f" (TTR {lex['ttr']})"
        )

    lines.append("")
    lines.append("Verb overview")
    if not body["verb_overview"]:
        lines.append("  (none)")
    for verb in body["verb_overview"]:
        morph = ", ".join(f"{k}={v}" for k, v in verb["morph"].items())
        lines.append(
            f"  [{verb['send_id']}:{verb['word_id']}] {verb['speaker']}"
            f" {verb['normalized'] or verb['surface']}"
            f" (lemma {verb['lemma'] or '-'}, {verb['stts']}"
            + (f"; {morph}" if morph else "")
            + ")"
        )

    return "\n".join(lines) + "\n"
