"""Reader for the 11-column annotation TSV format.

The format is UTF-8, tab-delimited, one header line, one row per token.
Empty cells mean "not annotated". A row whose word is ``<sentence>`` is a
sentence-separator record and carries no annotations. Rows sharing a turn id
form one utterance; a fresh utterance also starts whenever the word counter
resets to 0, so consecutive utterances may reuse a turn id.

Parsing is strict: the first problem raises with a 1-based line number.
"""

from __future__ import annotations

from dataclasses import dataclass

from lsa_workbench.annotation.model import (
    SENTENCE_MARK,
    Speaker,
    SvaMark,
    Token,
    Transcript,
    Utterance,
    Variant,
)
from lsa_workbench.tagsets import SttsTag, UposTag, MORPH_VALUES

HEADER_COLUMNS: tuple[str, ...] = (
    "send_id",
    "speaker",
    "word_id",
    "word",
    "normalized",
    "lemma",
    "UPOS tag",
    "STTS tag",
    "morphology",
    "SVA",
    "dependency",
)
HEADER_LINE = "\t".join(HEADER_COLUMNS)

_QUOTES = "'\"`´‘’“”"


class AnnotationParseError(ValueError):
    """Base parse failure; carries the 1-based input line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class NonUtf8Input(AnnotationParseError):
    pass


class MalformedHeader(AnnotationParseError):
    pass


class MalformedRow(AnnotationParseError):
    pass


class BadMorphSyntax(AnnotationParseError):
    pass


class UnknownTag(AnnotationParseError):
    def __init__(self, message: str, line: int | None = None, value: str = ""):
        self.value = value
        super().__init__(message, line)


@dataclass
class _Row:
    line: int
    send_id: int
    speaker: Speaker | None
    word_id: int
    is_separator: bool
    token: Token | None
    extras: tuple[str, ...]


def _int_cell(cell: str, name: str, line: int) -> int:
    try:
        value = int(cell)
    except ValueError:
        raise MalformedRow(f"{name} must be an integer, got {cell!r}", line) from None
    if value < 0:
        raise MalformedRow(f"{name} must be non-negative, got {value}", line)
    return value


def parse_morph_cell(cell: str, line: int | None = None) -> dict[str, str]:
    """Parse a morphology cell into a key/value dict.

    The canonical spelling is ``{'Case': 'Nom', 'Number': 'Sing'}`` with keys
    sorted; on input any of no quotes, single, double, or backtick-style
    quotes are tolerated, as is ``{}``. Keys and values are checked against
    the legal morphology table.
    """
    if not cell:
        return {}
    body = cell.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise BadMorphSyntax(f"morphology must be brace-delimited, got {cell!r}", line)
    body = body[1:-1].strip()
    if not body:
        return {}
    morph: dict[str, str] = {}
    for pair in body.split(","):
        if ":" not in pair:
            raise BadMorphSyntax(f"morphology pair {pair.strip()!r} has no ':'", line)
        raw_key, _, raw_value = pair.partition(":")
        key = raw_key.strip().strip(_QUOTES)
        value = raw_value.strip().strip(_QUOTES)
        if not key:
            raise BadMorphSyntax("empty morphology key", line)
        if key in morph:
            raise BadMorphSyntax(f"duplicate morphology key {key!r}", line)
        legal = MORPH_VALUES.get(key)
        if legal is None:
            raise BadMorphSyntax(f"unknown morphology key {key!r}", line)
        if value not in legal:
            raise BadMorphSyntax(f"illegal value {value!r} for morphology key {key}", line)
        morph[key] = value
    return morph


def _parse_row(line_no: int, cells: list[str]) -> _Row:
    if len(cells) != len(HEADER_COLUMNS):
        raise MalformedRow(
            f"expected {len(HEADER_COLUMNS)} columns, got {len(cells)}", line_no
        )
    (send_s, speaker_s, word_id_s, word, normalized, lemma,
     upos_s, stts_s, morph_s, sva_s, dep) = cells

    send_id = _int_cell(send_s, "send_id", line_no)
    if speaker_s == "":
        speaker = None
    else:
        try:
            speaker = Speaker(speaker_s)
        except ValueError:
            raise MalformedRow(f"unknown speaker {speaker_s!r}", line_no) from None

    if word == SENTENCE_MARK:
        word_id = _int_cell(word_id_s, "word_id", line_no) if word_id_s else 0
        if word_id != 0:
            raise MalformedRow("separator records must have word_id 0", line_no)
        extras = tuple(c for c in (normalized, lemma, upos_s, stts_s, morph_s, sva_s, dep) if c)
        return _Row(line_no, send_id, speaker, 0, True, None, extras)

    if not word:
        raise MalformedRow("empty word", line_no)
    word_id = _int_cell(word_id_s, "word_id", line_no)

    upos: UposTag | None = None
    if upos_s:
        try:
            upos = UposTag(upos_s)
        except ValueError:
            raise UnknownTag(f"unknown UPOS tag {upos_s!r}", line_no, upos_s) from None

    stts: SttsTag | None = None
    contracted = False
    was_pav = False
    if stts_s:
        base = stts_s
        if base.endswith("+"):
            contracted = True
            base = base[:-1]
        if base == SttsTag.PAV.value:
            was_pav = True
            base = SttsTag.PROAV.value
        try:
            stts = SttsTag(base)
        except ValueError:
            raise UnknownTag(f"unknown STTS tag {stts_s!r}", line_no, stts_s) from None
        if stts is SttsTag.PAV:  # defensive; PAV is rewritten above
            stts = SttsTag.PROAV
            was_pav = True

    morph = parse_morph_cell(morph_s, line_no)

    try:
        sva = SvaMark(sva_s)
    except ValueError:
        raise UnknownTag(f"unknown SVA mark {sva_s!r}", line_no, sva_s) from None

    token = Token(
        word_id=word_id,
        surface=word,
        normalized=normalized,
        lemma=lemma,
        upos=upos,
        stts=stts,
        stts_contracted=contracted,
        morph=morph,
        sva=sva,
        dep=dep,
        stts_was_pav=was_pav,
    )
    return _Row(line_no, send_id, speaker, word_id, False, token, ())


def parse_transcript(
    data: bytes | str,
    *,
    variant: Variant = Variant.SWISS_GERMAN,
    recording_id: str = "",
) -> Transcript:
    """Parse TSV bytes or text into a Transcript.

    Raises NonUtf8Input, MalformedHeader, MalformedRow, BadMorphSyntax, or
    UnknownTag, each pointing at the offending line.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise NonUtf8Input(f"input is not valid UTF-8: {exc}") from None
    else:
        text = data

    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MalformedHeader("empty input, header line required", 1)
    header = lines[0].rstrip("\r")
    if header != HEADER_LINE:
        raise MalformedHeader(
            f"header must be exactly {HEADER_LINE!r}, got {header!r}", 1
        )

    rows: list[_Row] = []
    for idx, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\r")
        if not line:
            continue
        rows.append(_parse_row(idx, line.split("\t")))

    utterances: list[Utterance] = []
    group: list[_Row] = []
    last_send = -1

    def flush() -> None:
        nonlocal last_send
        if not group:
            return
        first = group[0]
        if first.send_id < last_send:
            raise MalformedRow(
                f"send_id {first.send_id} decreases (previous {last_send})", first.line
            )
        last_send = first.send_id
        for row in group[1:]:
            if row.speaker != first.speaker:
                raise MalformedRow("speaker changes inside an utterance", row.line)
        if first.is_separator:
            utterances.append(
                Utterance(
                    send_id=first.send_id,
                    speaker=first.speaker,
                    is_separator=True,
                    separator_extras=first.extras,
                )
            )
        else:
            for pos, row in enumerate(group):
                if row.word_id != pos:
                    raise MalformedRow(
                        f"word_id must be {pos} here, got {row.word_id}", row.line
                    )
            utterances.append(
                Utterance(
                    send_id=first.send_id,
                    speaker=first.speaker,
                    tokens=tuple(row.token for row in group),  # type: ignore[misc]
                )
            )
        group.clear()

    for row in rows:
        starts_new = (
            not group
            or row.is_separator
            or group[0].is_separator
            or row.send_id != group[0].send_id
            or row.word_id == 0
        )
        if starts_new:
            flush()
        group.append(row)
    flush()

    return Transcript(variant=variant, recording_id=recording_id, utterances=tuple(utterances))
