"""Transcription error rates over a word alignment.

With hits H, substitutions S, deletions D, insertions I, reference length
N_ref = H + S + D and hypothesis length N_hyp = H + S + I:

    wer = (S + D + I) / N_ref
    mer = (S + D + I) / (H + S + D + I)
    wil = 1 - (H / N_ref) * (H / N_hyp)
    cer = character-level wer over the space-joined word sequences
          (separator spaces count as characters)

Pinned edge cases: empty reference with a non-empty hypothesis raises
EmptyReferenceError (no finite rate exists); empty vs empty is all zeros;
an empty hypothesis against a non-empty reference gives wil = 1.0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from lsa_workbench.asr.align import AlignmentResult, align_sequences


class EmptyReferenceError(ValueError):
    """Raised when the reference is empty but the hypothesis is not."""


@dataclass(frozen=True)
class ErrorRates:
    wer: float
    cer: float
    mer: float
    wil: float

    def as_dict(self) -> dict[str, float]:
        return {"wer": self.wer, "cer": self.cer, "mer": self.mer, "wil": self.wil}


def rates_from_alignment(word_alignment: AlignmentResult, cer: float) -> ErrorRates:
    h = word_alignment.hits
    s = word_alignment.substitutions
    d = word_alignment.deletions
    i = word_alignment.insertions
    n_ref = word_alignment.ref_len
    n_hyp = word_alignment.hyp_len
    if n_ref == 0:
        raise EmptyReferenceError("reference is empty")
    errors = s + d + i
    wer = errors / n_ref
    mer = errors / (h + errors)
    wil = 1.0 if n_hyp == 0 else 1.0 - (h / n_ref) * (h / n_hyp)
    return ErrorRates(wer=wer, cer=cer, mer=mer, wil=wil)


def error_rates(ref_words: Sequence[str], hyp_words: Sequence[str]) -> ErrorRates:
    """Word- and character-level error rates of ``hyp_words`` against ``ref_words``."""
    if len(ref_words) == 0:
        if len(hyp_words) == 0:
            return ErrorRates(0.0, 0.0, 0.0, 0.0)
        raise EmptyReferenceError("reference is empty but hypothesis is not")
    word_alignment = align_sequences(ref_words, hyp_words)
    ref_chars = list(" ".join(ref_words))
    hyp_chars = list(" ".join(hyp_words))
    char_alignment = align_sequences(ref_chars, hyp_chars)
    if char_alignment.ref_len == 0:  # only reachable via empty-string words
        cer = 0.0 if char_alignment.hyp_len == 0 else 1.0
    else:
        cer = char_alignment.distance / char_alignment.ref_len
    return rates_from_alignment(word_alignment, cer)
