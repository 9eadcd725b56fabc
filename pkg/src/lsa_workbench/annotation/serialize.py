"""Canonical writer for the 11-column annotation TSV format.

Output is UTF-8, LF line endings, trailing newline, no quoting. Morphology
cells are written brace-delimited with single-quoted keys and values and
keys sorted alphabetically. parse(serialize(t)) == t for every transcript;
serialize(parse(b)) == b whenever b is already in canonical form.
"""

from __future__ import annotations

from typing import Mapping

from lsa_workbench.annotation.model import (
    SENTENCE_MARK,
    Token,
    Transcript,
    Utterance,
)
from lsa_workbench.annotation.parse import HEADER_LINE


def format_morph_cell(morph: Mapping[str, str]) -> str:
    if not morph:
        return ""
    inner = ", ".join(f"'{k}': '{morph[k]}'" for k in sorted(morph))
    return "{" + inner + "}"


def _token_cells(utt: Utterance, token: Token) -> list[str]:
    stts_cell = ""
    if token.stts is not None:
        stts_cell = token.stts.value + ("+" if token.stts_contracted else "")
    return [
        str(utt.send_id),
        utt.speaker.value if utt.speaker is not None else "",
        str(token.word_id),
        token.surface,
        token.normalized,
        token.lemma,
        token.upos.value if token.upos is not None else "",
        stts_cell,
        format_morph_cell(token.morph),
        token.sva.value,
        token.dep,
    ]


def serialize_text(transcript: Transcript) -> str:
    lines = [HEADER_LINE]
    for utt in transcript.utterances:
        if utt.is_separator:
            cells = [
                str(utt.send_id),
                utt.speaker.value if utt.speaker is not None else "",
                "0",
                SENTENCE_MARK,
            ] + [""] * 7
            lines.append("\t".join(cells))
        else:
            for token in utt.tokens:
                lines.append("\t".join(_token_cells(utt, token)))
    return "\n".join(lines) + "\n"


def serialize_transcript(transcript: Transcript) -> bytes:
    return serialize_text(transcript).encode("utf-8")
