"""Clinical language-sample analyses and report composition."""

from lsa_workbench.analysis.config import (
    AnalysisConfig,
    ConfigError,
    DEFAULT_EXCLUDE,
    EXCLUDABLE,
)
from lsa_workbench.analysis.measures import (
    AnalysisError,
    EmptySelectionError,
    LexicalDiversity,
    MluResult,
    NoUtterancesError,
    PosDistribution,
    SvaRecord,
    VerbEntry,
    included_tokens,
    lexical_diversity,
    mlu,
    mlu_for_speaker,
    pos_distribution,
    sva_pairs,
    token_excluded,
    verb_overview,
)
from lsa_workbench.analysis.report import (
    AnalysisReport,
    build_report,
    format_ratio,
    render_text,
)

__all__ = [
    "AnalysisConfig",
    "AnalysisError",
    "AnalysisReport",
    "ConfigError",
    "DEFAULT_EXCLUDE",
    "EXCLUDABLE",
    "EmptySelectionError",
    "LexicalDiversity",
    "MluResult",
    "NoUtterancesError",
    "PosDistribution",
    "SvaRecord",
    "VerbEntry",
    "build_report",
    "format_ratio",
    "included_tokens",
    "lexical_diversity",
    "mlu",
    "mlu_for_speaker",
    "pos_distribution",
    "render_text",
    "sva_pairs",
    "token_excluded",
    "verb_overview",
]
