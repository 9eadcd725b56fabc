"""Token-level tagging evaluation against a gold transcript.

Tokens pair up by (send_id, word_id); both transcripts must cover exactly
the same token positions. Pairs where either side carries no tag are not
scored and are counted in ``excluded`` (as are separator records and, on
request, tokens whose fine tag has a usage-dependent coarse mapping).
Scoring is one tag per token, so micro precision = micro recall = accuracy,
and micro-F1 equals the confusion-matrix trace over its total. Contracted
fine tags ("+" suffix) compare on the base tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from lsa_workbench.agreement import ConfusionMatrix
from lsa_workbench.annotation.model import Speaker, Transcript
from lsa_workbench.tagsets import AMBIGUOUS_STTS, STTS_ORDER, UPOS_ORDER

TAGSETS = ("upos", "stts")

POOLED = "ALL"


class PosEvalError(ValueError):
    pass


class TokenMisalignmentError(PosEvalError):
    """Gold and predicted transcripts cover different token positions."""

    def __init__(self, only_gold: list, only_pred: list):
        self.only_gold = only_gold
        self.only_pred = only_pred
        parts = []
        if only_gold:
            parts.append(f"only in gold: {only_gold[:5]}")
        if only_pred:
            parts.append(f"only in prediction: {only_pred[:5]}")
        super().__init__("token positions differ; " + "; ".join(parts))


class EmptyGroupError(PosEvalError):
    """No scoreable token pairs in the requested selection."""


@dataclass(frozen=True)
class PerTagScores:
    precision: float
    recall: float
    f1: float
    support: int
    predicted: int


@dataclass(frozen=True)
class TagEvalReport:
    tagset: str
    group: str  # POOLED or a speaker value
    micro_f1: float
    macro_f1: float
    token_count: int
    excluded: int
    per_tag: Mapping[str, PerTagScores]
    confusion: ConfusionMatrix


def _tag_labels(tagset: str) -> tuple[str, ...]:
    if tagset == "upos":
        return tuple(t.value for t in UPOS_ORDER)
    if tagset == "stts":
        return tuple(t.value for t in STTS_ORDER)
    raise PosEvalError(f"tagset must be one of {TAGSETS}, got {tagset!r}")


def _token_table(transcript: Transcript, tagset: str):
    table = {}
    separators = 0
    for utt in transcript.utterances:
        if utt.is_separator:
            separators += 1
            continue
        for token in utt.tokens:
            tag = token.upos if tagset == "upos" else token.stts
            table[(utt.send_id, token.word_id)] = (
                utt.speaker,
                None if tag is None else tag.value,
                token.stts,
            )
    return table, separators


def _score_group(
    tagset: str,
    group: str,
    pairs: Sequence[tuple[str, str]],
    excluded: int,
) -> TagEvalReport:
    labels = _tag_labels(tagset)
    index = {label: i for i, label in enumerate(labels)}
    confusion = ConfusionMatrix.from_pairs(
        ((index[g], index[p]) for g, p in pairs), labels
    )
    total = confusion.total
    if total == 0:
        raise EmptyGroupError(f"no scoreable tokens in group {group!r}")
    micro = confusion.trace / total

    rows = confusion.row_marginals()
    cols = confusion.col_marginals()
    per_tag: dict[str, PerTagScores] = {}
    macro_parts: list[float] = []
    for i, label in enumerate(labels):
        support, predicted = rows[i], cols[i]
        if support == 0 and predicted == 0:
            continue
        correct = confusion.counts[i][i]
        precision = correct / predicted if predicted else 0.0
        recall = correct / support if support else 0.0
        f1 = (2 * precision * recall / (precision + recall)) if (precision + recall) else 0.0
        per_tag[label] = PerTagScores(precision, recall, f1, support, predicted)
        if support:
            macro_parts.append(f1)
    macro = sum(macro_parts) / len(macro_parts) if macro_parts else 0.0

    return TagEvalReport(
        tagset=tagset,
        group=group,
        micro_f1=micro,
        macro_f1=macro,
        token_count=total,
        excluded=excluded,
        per_tag=per_tag,
        confusion=confusion,
    )


def evaluate_tagging(
    gold: Transcript,
    predicted: Transcript,
    *,
    tagset: str = "upos",
    exclude_ambiguous: bool = False,
    per_speaker: bool = True,
) -> list[TagEvalReport]:
    """Score predicted tags against gold, pooled and (optionally) per speaker.

    ``exclude_ambiguous`` removes tokens whose gold fine tag converts to more
    than one legal coarse tag; useful when the coarse prediction came through
    tag-set conversion rather than a coarse tagger.
    """
    gold_table, gold_seps = _token_table(gold, tagset)
    pred_table, _ = _token_table(predicted, tagset)
    only_gold = sorted(set(gold_table) - set(pred_table))
    only_pred = sorted(set(pred_table) - set(gold_table))
    if only_gold or only_pred:
        raise TokenMisalignmentError(only_gold, only_pred)

    selected: dict[str, list[tuple[str, str]]] = {POOLED: []}
    excluded: dict[str, int] = {POOLED: gold_seps}
    for key in sorted(gold_table):
        speaker, gold_tag, gold_stts = gold_table[key]
        _, pred_tag, _ = pred_table[key]
        group_keys = [POOLED]
        if speaker is not None:
            group_keys.append(speaker.value)
        skip = (
            gold_tag is None
            or pred_tag is None
            or (exclude_ambiguous and gold_stts is not None and gold_stts in AMBIGUOUS_STTS)
        )
        for gk in group_keys:
            selected.setdefault(gk, [])
            excluded.setdefault(gk, 0)
            if skip:
                excluded[gk] += 1
            else:
                selected[gk].append((gold_tag, pred_tag))

    reports = [_score_group(tagset, POOLED, selected[POOLED], excluded[POOLED])]
    if per_speaker:
        for speaker in Speaker:
            pairs = selected.get(speaker.value, [])
            if pairs:
                reports.append(
                    _score_group(tagset, speaker.value, pairs, excluded.get(speaker.value, 0))
                )
    return reports


def confusion_by_tag(
    gold: Transcript,
    predicted: Transcript,
    *,
    tagset: str = "upos",
) -> ConfusionMatrix:
    """Pooled gold-vs-predicted confusion matrix over the full tag inventory."""
    return evaluate_tagging(gold, predicted, tagset=tagset, per_speaker=False)[0].confusion
