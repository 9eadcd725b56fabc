"""Pre-scoring text normalization for transcription evaluation.

The policy is explicit and idempotent: applying the same policy twice gives
the same result. Placeholder handling runs first so the literal forms stay
recognizable: UNK (unintelligible speech) is dropped when requested; NAME
(anonymized proper name) always survives verbatim and is shielded from
lowercasing so it cannot collide with the ordinary word "name".
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable

from lsa_workbench.annotation.model import ANONYMIZED_NAME, UNINTELLIGIBLE


def is_punctuation_token(word: str) -> bool:
    """True when every character is Unicode punctuation (category P*)."""
    return bool(word) and all(unicodedata.category(ch).startswith("P") for ch in word)


@dataclass(frozen=True)
class EvalNormPolicy:
    lowercase: bool = True
    drop_punctuation: bool = True
    drop_unintelligible: bool = True

    def apply(self, words: Iterable[str]) -> list[str]:
        out: list[str] = []
        for word in words:
            if self.drop_unintelligible and word == UNINTELLIGIBLE:
                continue
            if word == ANONYMIZED_NAME:
                out.append(word)
                continue
            if self.drop_punctuation and is_punctuation_token(word):
                continue
            out.append(word.lower() if self.lowercase else word)
        return out


#: Leave the words exactly as they are.
IDENTITY_POLICY = EvalNormPolicy(lowercase=False, drop_punctuation=False, drop_unintelligible=False)

#: Scoring default: case-folded, punctuation-free, unintelligible dropped.
DEFAULT_POLICY = EvalNormPolicy()


def eval_normalize(words: Iterable[str], policy: EvalNormPolicy = DEFAULT_POLICY) -> list[str]:
    return policy.apply(words)
