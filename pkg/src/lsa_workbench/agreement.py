"""Inter-annotator agreement: pairwise Cohen's kappa with linear weights.

Categories are positions 0..k-1 in a pinned order (for tag data: the
canonical tag-set order). With counts n[i][j] over the n items rated by both
annotators, row/column marginals r[i], c[j], and agreement weights

    linear:     w[i][j] = 1 - |i - j| / (k - 1)        (w = 1 when k == 1)
    unweighted: w[i][j] = 1 if i == j else 0

observed and expected agreement are

    p_o = sum_ij w[i][j] * n[i][j] / n
    p_e = sum_ij w[i][j] * r[i] * c[j] / n^2

and kappa = (p_o - p_e) / (1 - p_e). All arithmetic runs on exact rationals,
so swapping the annotators yields a bit-identical result. When p_e == 1 the
ratio is undefined; perfect observed agreement still reports 1.0, anything
else raises DegenerateMarginalsError.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

WEIGHTINGS = ("linear", "unweighted")


class AgreementError(ValueError):
    pass


class NoOverlapError(AgreementError):
    """The two series share no item keys."""


class DegenerateMarginalsError(AgreementError):
    """Expected agreement is exactly 1 but observed agreement is not."""


@dataclass(frozen=True)
class RatingSeries:
    """One annotator's category choices, keyed by item.

    ``ratings`` maps hashable item keys (for tag data: (send_id, word_id))
    to 0-based category indices in the pinned category order.
    """

    annotator_id: str
    ratings: tuple[tuple[Hashable, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ratings", tuple(self.ratings))
        seen = set()
        for key, index in self.ratings:
            if key in seen:
                raise AgreementError(f"duplicate item key {key!r} in series {self.annotator_id!r}")
            seen.add(key)
            if index < 0:
                raise AgreementError(f"negative category index for item {key!r}")

    def as_dict(self) -> dict[Hashable, int]:
        return dict(self.ratings)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Square count matrix; rows index the first series, columns the second."""

    labels: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.labels)
        if len(self.counts) != k or any(len(row) != k for row in self.counts):
            raise AgreementError("confusion matrix must be square over the labels")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], labels: Sequence[str]) -> "ConfusionMatrix":
        k = len(labels)
        grid = [[0] * k for _ in range(k)]
        for a, b in pairs:
            if not (0 <= a < k and 0 <= b < k):
                raise AgreementError(f"category index out of range: ({a}, {b}) with k={k}")
            grid[a][b] += 1
        return cls(labels=tuple(labels), counts=tuple(tuple(row) for row in grid))

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(len(self.labels)))

    def row_marginals(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.counts)

    def col_marginals(self) -> tuple[int, ...]:
        k = len(self.labels)
        return tuple(sum(self.counts[i][j] for i in range(k)) for j in range(k))


@dataclass(frozen=True)
class KappaResult:
    kappa: float
    observed: float
    expected: float
    n_items: int
    only_a: int
    only_b: int


def _weight(i: int, j: int, k: int, weighting: str) -> Fraction:
    if weighting == "unweighted":
        return Fraction(1) if i == j else Fraction(0)
    if k <= 1:
        return Fraction(1)
    return 1 - Fraction(abs(i - j), k - 1)


def weighted_kappa(
    a: RatingSeries,
    b: RatingSeries,
    *,
    k: int | None = None,
    weighting: str = "linear",
) -> KappaResult:
    """Kappa over the items rated in both series.

    ``k`` is the category count; when omitted it is inferred as the largest
    index in either series plus one. Items present in only one series are
    excluded and reported in the result.
    """
    if weighting not in WEIGHTINGS:
        raise AgreementError(f"weighting must be one of {WEIGHTINGS}, got {weighting!r}")
    ra, rb = a.as_dict(), b.as_dict()
    common = sorted(set(ra) & set(rb), key=repr)
    only_a = len(ra) - len(common)
    only_b = len(rb) - len(common)
    if not common:
        raise NoOverlapError(f"series {a.annotator_id!r} and {b.annotator_id!r} share no items")

    max_index = max(max(ra[key] for key in common), max(rb[key] for key in common))
    size = (max_index + 1) if k is None else k
    if size <= max_index:
        raise AgreementError(f"k={size} too small for category index {max_index}")

    n = len(common)
    counts: dict[tuple[int, int], int] = {}
    row = [0] * size
    col = [0] * size
    for key in common:
        i, j = ra[key], rb[key]
        counts[(i, j)] = counts.get((i, j), 0) + 1
        row[i] += 1
        col[j] += 1

    p_o = sum(
        (_weight(i, j, size, weighting) * cnt for (i, j), cnt in counts.items()),
        start=Fraction(0),
    ) / n
    p_e = sum(
        (
            _weight(i, j, size, weighting) * row[i] * col[j]
            for i in range(size)
            if row[i]
            for j in range(size)
            if col[j]
        ),
        start=Fraction(0),
    ) / Fraction(n * n)

    if p_e == 1:
        if p_o == 1:
            value = Fraction(1)
        else:
            raise DegenerateMarginalsError(
                "expected agreement is 1 with imperfect observed agreement"
            )
    else:
        value = (p_o - p_e) / (1 - p_e)

    return KappaResult(
        kappa=float(value),
        observed=float(p_o),
        expected=float(p_e),
        n_items=n,
        only_a=only_a,
        only_b=only_b,
    )


def pairwise_iaa(
    series: Sequence[RatingSeries],
    *,
    k: int | None = None,
    weighting: str = "linear",
) -> dict[tuple[str, str], KappaResult]:
    """Kappa for every unordered annotator pair, in input order."""
    if len(series) < 2:
        raise AgreementError("need at least two rating series")
    ids = [s.annotator_id for s in series]
    if len(set(ids)) != len(ids):
        raise AgreementError("annotator ids must be unique")
    out: dict[tuple[str, str], KappaResult] = {}
    for idx, first in enumerate(series):
        for second in series[idx + 1 :]:
            out[(first.annotator_id, second.annotator_id)] = weighted_kappa(
                first, second, k=k, weighting=weighting
            )
    return out
