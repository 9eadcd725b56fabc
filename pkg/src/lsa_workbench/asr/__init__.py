"""Transcription evaluation: alignment, error rates, aggregation."""

from lsa_workbench.asr.aggregate import METRICS, GroupStats, aggregate_rates
from lsa_workbench.asr.align import AlignmentOp, AlignmentResult, align_sequences
from lsa_workbench.asr.normalize import (
    DEFAULT_POLICY,
    IDENTITY_POLICY,
    EvalNormPolicy,
    eval_normalize,
    is_punctuation_token,
)
from lsa_workbench.asr.rates import (
    EmptyReferenceError,
    ErrorRates,
    error_rates,
    rates_from_alignment,
)

__all__ = [
    "AlignmentOp",
    "AlignmentResult",
    "DEFAULT_POLICY",
    "EmptyReferenceError",
    "ErrorRates",
    "EvalNormPolicy",
    "GroupStats",
    "IDENTITY_POLICY",
    "METRICS",
    "aggregate_rates",
    "align_sequences",
    "error_rates",
    "eval_normalize",
    "is_punctuation_token",
    "rates_from_alignment",
]
