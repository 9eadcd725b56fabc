"""Annotated-transcript data model, TSV reader/writer, lint, projections."""

from lsa_workbench.annotation.lint import RULES, LintRule, lint_transcript
from lsa_workbench.annotation.model import (
    ANONYMIZED_NAME,
    SENTENCE_MARK,
    UNINTELLIGIBLE,
    LintFinding,
    Severity,
    Speaker,
    SvaMark,
    Token,
    Transcript,
    Utterance,
    Variant,
)
from lsa_workbench.annotation.parse import (
    AnnotationParseError,
    BadMorphSyntax,
    HEADER_COLUMNS,
    HEADER_LINE,
    MalformedHeader,
    MalformedRow,
    NonUtf8Input,
    UnknownTag,
    parse_morph_cell,
    parse_transcript,
)
from lsa_workbench.annotation.serialize import (
    format_morph_cell,
    serialize_text,
    serialize_transcript,
)
from lsa_workbench.annotation.views import (
    FORMS,
    ProjectedUtterance,
    flatten_words,
    project_view,
)

__all__ = [
    "ANONYMIZED_NAME",
    "AnnotationParseError",
    "BadMorphSyntax",
    "FORMS",
    "HEADER_COLUMNS",
    "HEADER_LINE",
    "LintFinding",
    "LintRule",
    "MalformedHeader",
    "MalformedRow",
    "NonUtf8Input",
    "ProjectedUtterance",
    "RULES",
    "SENTENCE_MARK",
    "Severity",
    "Speaker",
    "SvaMark",
    "Token",
    "Transcript",
    "UNINTELLIGIBLE",
    "UnknownTag",
    "Utterance",
    "Variant",
    "flatten_words",
    "format_morph_cell",
    "lint_transcript",
    "parse_morph_cell",
    "parse_transcript",
    "project_view",
    "serialize_text",
    "serialize_transcript",
]
