"""Part-of-speech inventories, conversion, and morphology validation."""

from lsa_workbench.tagsets.tables import (
    AMBIGUOUS_STTS,
    AmbiguousTemplateError,
    MORPH_TEMPLATES,
    MORPH_VALUES,
    MorphFinding,
    MorphTemplate,
    STTS_ORDER,
    STTS_PUNCT_TAGS,
    STTS_TO_UPOS_DEFAULT,
    STTS_VERB_TAGS,
    SttsTag,
    TagsetError,
    UPOS_ORDER,
    UposTag,
    allowed_upos,
    check_morph_legality,
    expected_morph_keys,
    is_ambiguous,
    resolve_template,
    stts_to_upos,
    templates_for,
    validate_morph,
)

__all__ = [
    "AMBIGUOUS_STTS",
    "AmbiguousTemplateError",
    "MORPH_TEMPLATES",
    "MORPH_VALUES",
    "MorphFinding",
    "MorphTemplate",
    "STTS_ORDER",
    "STTS_PUNCT_TAGS",
    "STTS_TO_UPOS_DEFAULT",
    "STTS_VERB_TAGS",
    "SttsTag",
    "TagsetError",
    "UPOS_ORDER",
    "UposTag",
    "allowed_upos",
    "check_morph_legality",
    "expected_morph_keys",
    "is_ambiguous",
    "resolve_template",
    "stts_to_upos",
    "templates_for",
    "validate_morph",
]
