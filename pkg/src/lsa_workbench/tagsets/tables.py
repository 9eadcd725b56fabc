"""Tag inventories, tag-set conversion, and morphology validation.

Two part-of-speech inventories are supported: the 17-tag coarse set (UPOS)
and the 55-tag fine set (STTS plus the PROAV respelling of PAV and the three
``$`` punctuation tags). Conversion from fine to coarse tags, the legal
morphology key/value table, and the per-tag morphology templates are loaded
from versioned data files under ``data/`` so corrections never require code
changes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction  # noqa: F401  (re-exported convenience in tests)
from importlib import resources
from typing import Iterable, Mapping


class UposTag(str, enum.Enum):
    """Coarse part-of-speech tags, in canonical order."""

    ADJ = "ADJ"
    ADP = "ADP"
    ADV = "ADV"
    AUX = "AUX"
    CCONJ = "CCONJ"
    DET = "DET"
    INTJ = "INTJ"
    NOUN = "NOUN"
    NUM = "NUM"
    PART = "PART"
    PRON = "PRON"
    PROPN = "PROPN"
    PUNCT = "PUNCT"
    SCONJ = "SCONJ"
    SYM = "SYM"
    VERB = "VERB"
    X = "X"


class SttsTag(str, enum.Enum):
    """Fine part-of-speech tags, in canonical order.

    PAV is the legacy spelling of the pronominal-adverb tag; PROAV is the
    accepted spelling. Parsers normalize PAV to PROAV, so PAV never appears
    in stored annotations, but it stays in the inventory so legacy input can
    be named in diagnostics.
    """

    ADJA = "ADJA"
    ADJD = "ADJD"
    APPO = "APPO"
    APPR = "APPR"
    APPRART = "APPRART"
    APZR = "APZR"
    ADV = "ADV"
    ART = "ART"
    CARD = "CARD"
    KOKOM = "KOKOM"
    KON = "KON"
    KOUI = "KOUI"
    KOUS = "KOUS"
    ITJ = "ITJ"
    NE = "NE"
    NN = "NN"
    PTKA = "PTKA"
    PTKANT = "PTKANT"
    PTKNEG = "PTKNEG"
    PTKVZ = "PTKVZ"
    PTKZU = "PTKZU"
    PAV = "PAV"
    PROAV = "PROAV"
    PDAT = "PDAT"
    PDS = "PDS"
    PIAT = "PIAT"
    PIDAT = "PIDAT"
    PIS = "PIS"
    PPER = "PPER"
    PPOSAT = "PPOSAT"
    PPOSS = "PPOSS"
    PRF = "PRF"
    PRELAT = "PRELAT"
    PRELS = "PRELS"
    PWAT = "PWAT"
    PWAV = "PWAV"
    PWS = "PWS"
    TRUNC = "TRUNC"
    FM = "FM"
    XY = "XY"
    VAFIN = "VAFIN"
    VMFIN = "VMFIN"
    VVFIN = "VVFIN"
    VAIMP = "VAIMP"
    VVIMP = "VVIMP"
    VAINF = "VAINF"
    VMINF = "VMINF"
    VVINF = "VVINF"
    VVIZU = "VVIZU"
    VAPP = "VAPP"
    VMPP = "VMPP"
    VVPP = "VVPP"
    PUNCT_FINAL = "$."
    PUNCT_COMMA = "$,"
    PUNCT_OTHER = "$("


UPOS_ORDER: tuple[UposTag, ...] = tuple(UposTag)
STTS_ORDER: tuple[SttsTag, ...] = tuple(SttsTag)

STTS_VERB_TAGS: frozenset[SttsTag] = frozenset(
    t for t in SttsTag if t.value.startswith("V")
)
STTS_PUNCT_TAGS: frozenset[SttsTag] = frozenset(
    {SttsTag.PUNCT_FINAL, SttsTag.PUNCT_COMMA, SttsTag.PUNCT_OTHER}
)


class TagsetError(ValueError):
    """Base class for tag-set level failures."""


class AmbiguousTemplateError(TagsetError):
    """The tag maps to several morphology templates and no hint was given."""


def _data_lines(name: str) -> list[list[str]]:
    text = resources.files(__package__).joinpath("data", name).read_text("utf-8")
    rows = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        rows.append(line.split("\t"))
    return rows


def _load_conversion() -> tuple[dict[SttsTag, UposTag], dict[SttsTag, frozenset[UposTag]]]:
    default: dict[SttsTag, UposTag] = {}
    allowed: dict[SttsTag, frozenset[UposTag]] = {}
    for row in _data_lines("stts_upos.tsv"):
        stts_s, upos_s = row[0], row[1]
        alts_s = row[2] if len(row) > 2 else ""
        stts = SttsTag(stts_s)
        upos = UposTag(upos_s)
        alts = frozenset(UposTag(a) for a in alts_s.split(",") if a)
        default[stts] = upos
        allowed[stts] = frozenset({upos}) | alts
    missing = set(SttsTag) - set(default)
    if missing:
        raise TagsetError(f"conversion table incomplete, missing: {sorted(m.value for m in missing)}")
    return default, allowed


def _load_morph_values() -> dict[str, frozenset[str]]:
    return {
        key: frozenset(values.split(","))
        for key, values in _data_lines("morph_values.tsv")
    }


@dataclass(frozen=True)
class MorphTemplate:
    """One row of the morphology template table.

    ``discriminator`` picks this row among several for the same tag:
    empty string (only row), ``number=Sing``/``number=Plur`` (match on the
    annotated Number value), or ``gender=present``/``gender=absent`` (match
    on whether Gender is annotated at all).
    """

    label: str
    tags: frozenset[SttsTag]
    discriminator: str
    keys: frozenset[str]
    example: Mapping[str, str]

    def matches(self, morph: Mapping[str, str]) -> bool:
        if not self.discriminator:
            return True
        field, _, want = self.discriminator.partition("=")
        if field == "number":
            return morph.get("Number") == want
        if field == "gender":
            return ("Gender" in morph) == (want == "present")
        raise TagsetError(f"unknown discriminator {self.discriminator!r}")


def _load_templates() -> tuple[MorphTemplate, ...]:
    out = []
    for label, tags_s, disc, keys_s, example_s in _data_lines("morph_templates.tsv"):
        example = {}
        for pair in example_s.split(";"):
            k, _, v = pair.partition("=")
            example[k] = v
        out.append(
            MorphTemplate(
                label=label,
                tags=frozenset(SttsTag(t) for t in tags_s.split(",")),
                discriminator=disc,
                keys=frozenset(keys_s.split(",")),
                example=example,
            )
        )
    return tuple(out)


STTS_TO_UPOS_DEFAULT, STTS_TO_UPOS_ALLOWED = _load_conversion()
MORPH_VALUES: dict[str, frozenset[str]] = _load_morph_values()
MORPH_TEMPLATES: tuple[MorphTemplate, ...] = _load_templates()

#: Fine tags whose coarse counterpart is usage-dependent.
AMBIGUOUS_STTS: frozenset[SttsTag] = frozenset(
    t for t, allowed in STTS_TO_UPOS_ALLOWED.items() if len(allowed) > 1
)


def stts_to_upos(tag: SttsTag) -> UposTag:
    """Default coarse tag for a fine tag. Total over the inventory."""
    return STTS_TO_UPOS_DEFAULT[tag]


def allowed_upos(tag: SttsTag) -> frozenset[UposTag]:
    """Every coarse tag a token with this fine tag may legally carry."""
    return STTS_TO_UPOS_ALLOWED[tag]


def is_ambiguous(tag: SttsTag) -> bool:
    return tag in AMBIGUOUS_STTS


def templates_for(tag: SttsTag) -> tuple[MorphTemplate, ...]:
    return tuple(t for t in MORPH_TEMPLATES if tag in t.tags)


def resolve_template(tag: SttsTag, morph: Mapping[str, str]) -> MorphTemplate | None:
    """Template row for ``tag`` given its morph annotation, or None.

    None means either no template exists for the tag (morph is expected to be
    empty) or several rows exist and the annotation decides none of them.
    """
    rows = templates_for(tag)
    if not rows:
        return None
    if len(rows) == 1:
        return rows[0]
    hits = [r for r in rows if r.matches(morph)]
    return hits[0] if len(hits) == 1 else None


def expected_morph_keys(tag: SttsTag, *, variant: str | None = None) -> frozenset[str]:
    """Morph keys a token with this fine tag is expected to carry.

    Tags absent from the template table expect no morphology. Tags with
    several template rows need ``variant`` (a substring of the row label,
    for example ``"plural"`` or ``"other"``); without it the call raises
    AmbiguousTemplateError.
    """
    rows = templates_for(tag)
    if not rows:
        return frozenset()
    if variant is not None:
        picked = [r for r in rows if variant.lower() in r.label.lower()]
        if len(picked) != 1:
            raise TagsetError(f"variant {variant!r} does not pick one template for {tag.value}")
        return picked[0].keys
    if len(rows) > 1:
        raise AmbiguousTemplateError(
            f"{tag.value} has {len(rows)} templates: "
            + ", ".join(r.label for r in rows)
        )
    return rows[0].keys


@dataclass(frozen=True)
class MorphFinding:
    """One problem in a morph annotation. ``severity`` is 'error' or 'warning'."""

    severity: str
    code: str
    message: str


def check_morph_legality(morph: Mapping[str, str]) -> list[MorphFinding]:
    """Errors for keys/values outside the legal morphology table."""
    findings = []
    for key, value in morph.items():
        legal = MORPH_VALUES.get(key)
        if legal is None:
            findings.append(
                MorphFinding("error", "morph-key", f"unknown morphology key {key!r}")
            )
        elif value not in legal:
            findings.append(
                MorphFinding(
                    "error",
                    "morph-value",
                    f"illegal value {value!r} for {key} (legal: {', '.join(sorted(legal))})",
                )
            )
    return findings


def validate_morph(tag: SttsTag, morph: Mapping[str, str]) -> list[MorphFinding]:
    """Check a morph annotation against the legal table and the tag's template.

    Illegal keys or values are errors. Keys the template does not expect are
    warnings, as are expected keys that are missing (annotators record as
    much as is determinable, so gaps are legitimate).
    """
    findings = check_morph_legality(morph)
    rows = templates_for(tag)
    if not rows:
        expected: frozenset[str] = frozenset()
    else:
        row = resolve_template(tag, morph)
        if row is not None:
            expected = row.keys
        else:
            expected = frozenset().union(*(r.keys for r in rows))
    for key in sorted(set(morph) - expected):
        if key in MORPH_VALUES:  # unknown keys already reported as errors
            findings.append(
                MorphFinding(
                    "warning",
                    "morph-unexpected",
                    f"key {key} not expected for {tag.value}",
                )
            )
    for key in sorted(expected - set(morph)):
        findings.append(
            MorphFinding("warning", "morph-missing", f"key {key} not annotated for {tag.value}")
        )
    return findings
