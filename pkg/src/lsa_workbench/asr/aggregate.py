"""Mean/spread summaries of error rates across recordings."""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from lsa_workbench.asr.rates import ErrorRates

METRICS = ("wer", "cer", "mer", "wil")


@dataclass(frozen=True)
class GroupStats:
    """Sample statistics of one metric inside one group of recordings."""

    key: tuple[str, ...]
    metric: str
    mean: float
    std: float
    n: int


def aggregate_rates(
    items: Iterable[tuple[Sequence[str], ErrorRates]],
) -> list[GroupStats]:
    """Group per-recording rates by key and summarize each metric.

    ``std`` is the sample standard deviation (n - 1 denominator); a group of
    one reports 0.0. Output is sorted by group key, then metric order.
    """
    groups: dict[tuple[str, ...], list[ErrorRates]] = {}
    for key, rates in items:
        groups.setdefault(tuple(key), []).append(rates)

    out: list[GroupStats] = []
    for key in sorted(groups):
        rates_list = groups[key]
        for metric in METRICS:
            values = [getattr(r, metric) for r in rates_list]
            mean = statistics.fmean(values)
            std = statistics.stdev(values) if len(values) > 1 else 0.0
            out.append(GroupStats(key=key, metric=metric, mean=mean, std=std, n=len(values)))
    return out
