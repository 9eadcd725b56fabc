"""Minimum-edit alignment of token sequences with a pinned tie-break.

The alignment is the classic unit-cost Levenshtein alignment. Among all
minimum-cost alignments, ties are broken deterministically: reading left to
right, prefer hit over substitution over deletion over insertion. With the
op encoding hit=0 < sub=1 < del=2 < ins=3, the chosen alignment is exactly
the lexicographically smallest minimum-cost op sequence.

Implementation: a suffix-cost matrix D where D[i, j] is the edit distance
between ref[i:] and hyp[j:], filled bottom-up with vectorized rows, then a
greedy forward walk from (0, 0) taking the highest-priority op that stays on
a shortest path. Memory is O(len(ref) * len(hyp)); fine for utterance- and
recording-sized inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

OpKind = Literal["hit", "sub", "del", "ins"]


@dataclass(frozen=True)
class AlignmentOp:
    """One alignment step. Indices refer to the consumed element, if any."""

    kind: OpKind
    ref_index: int | None
    hyp_index: int | None


@dataclass(frozen=True)
class AlignmentResult:
    hits: int
    substitutions: int
    deletions: int
    insertions: int
    ref_len: int
    hyp_len: int
    ops: tuple[AlignmentOp, ...]

    def __post_init__(self) -> None:
        # Bookkeeping identities; violation means the walker is broken.
        assert self.hits + self.substitutions + self.deletions == self.ref_len
        assert self.hits + self.substitutions + self.insertions == self.hyp_len
        assert len(self.ops) == self.hits + self.substitutions + self.deletions + self.insertions

    @property
    def distance(self) -> int:
        return self.substitutions + self.deletions + self.insertions


def _suffix_cost_matrix(ref_codes: np.ndarray, hyp_codes: np.ndarray) -> np.ndarray:
    n, m = len(ref_codes), len(hyp_codes)
    cost = np.empty((n + 1, m + 1), dtype=np.int32)
    cost[n] = np.arange(m, -1, -1, dtype=np.int32)
    positions = np.arange(m + 1, dtype=np.int32)
    for i in range(n - 1, -1, -1):
        below = cost[i + 1]
        cand = np.empty(m + 1, dtype=np.int32)
        if m:
            mismatch = (hyp_codes != ref_codes[i]).astype(np.int32)
            # best of diagonal (match/substitute) and deletion at each column
            np.minimum(below[1:] + mismatch, below[:-1] + 1, out=cand[:m])
        cand[m] = below[m] + 1
        # fold in runs of insertions: cost[i, j] = min_{k>=j} cand[k] + (k - j)
        shifted = cand + positions
        suffix_min = np.minimum.accumulate(shifted[::-1])[::-1]
        cost[i] = suffix_min - positions
    return cost


def align_sequences(ref: Sequence[str], hyp: Sequence[str]) -> AlignmentResult:
    """Align ``hyp`` against ``ref``; see module docstring for the tie-break."""
    n, m = len(ref), len(hyp)
    codebook: dict[str, int] = {}
    ref_codes = np.fromiter((codebook.setdefault(w, len(codebook)) for w in ref), dtype=np.int64, count=n)
    hyp_codes = np.fromiter((codebook.setdefault(w, len(codebook)) for w in hyp), dtype=np.int64, count=m)
    cost = _suffix_cost_matrix(ref_codes, hyp_codes)

    ops: list[AlignmentOp] = []
    hits = subs = dels = inss = 0
    i = j = 0
    while i < n or j < m:
        here = cost[i, j]
        if i < n and j < m and ref_codes[i] == hyp_codes[j] and here == cost[i + 1, j + 1]:
            ops.append(AlignmentOp("hit", i, j))
            hits += 1
            i += 1
            j += 1
        elif i < n and j < m and here == cost[i + 1, j + 1] + 1:
            ops.append(AlignmentOp("sub", i, j))
            subs += 1
            i += 1
            j += 1
        elif i < n and here == cost[i + 1, j] + 1:
            ops.append(AlignmentOp("del", i, None))
            dels += 1
            i += 1
        else:
            assert j < m and here == cost[i, j + 1] + 1, "no edit step possible; matrix corrupt"
            ops.append(AlignmentOp("ins", None, j))
            inss += 1
            j += 1

    return AlignmentResult(
        hits=hits,
        substitutions=subs,
        deletions=dels,
        insertions=inss,
        ref_len=n,
        hyp_len=m,
        ops=tuple(ops),
    )
