"""Wilcoxon rank-sum test and the Vargha-Delaney effect size."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

EXACT_LIMIT = 12
ALPHA = 0.05

FIRST_BETTER = "first-better"
SECOND_BETTER = "second-better"
IDENTICAL = "identical"


def _check(xs: Sequence[float], ys: Sequence[float]) -> None:
    if not xs or not ys:
        raise ValueError("both samples must be non-empty")


def midranks(values: Sequence[float]) -> list[float]:
    """1-based ranks, ties sharing the mean of the positions they span."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _exact_counts(doubled: list[int], n: int) -> dict[int, int]:
    """Number of size-``n`` subsets of ``doubled`` with each possible sum."""
    # counts[k] maps a sum to the number of k-subsets reaching it.
    counts: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    counts[0][0] = 1
    for r in doubled:
        for k in range(min(n, len(doubled)) - 1, -1, -1):
            for s, c in counts[k].items():
                key = s + r
                counts[k + 1][key] = counts[k + 1].get(key, 0) + c
    return counts[n]


def wilcoxon_rank_sum(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Two-sided p-value of the unpaired Wilcoxon rank-sum test.

    Small samples (combined size at most 12) use the exact permutation
    distribution of the mid-rank sum, which stays exact under ties; the
    p-value is twice the smaller tail, capped at 1.  Larger samples use the
    normal approximation with tie and continuity corrections.
    """
    _check(xs, ys)
    n, m = len(xs), len(ys)
    big_n = n + m
    ranks = midranks(list(xs) + list(ys))
    if big_n <= EXACT_LIMIT:
        doubled = [int(round(2 * r)) for r in ranks]
        observed = sum(doubled[:n])
        dist = _exact_counts(doubled, n)
        total = sum(dist.values())
        lower = sum(c for s, c in dist.items() if s <= observed)
        upper = sum(c for s, c in dist.items() if s >= observed)
        return min(1.0, 2 * min(lower, upper) / total)
    u = sum(ranks[:n]) - n * (n + 1) / 2
    mu = n * m / 2
    ties = {}
    for r in ranks:
        ties[r] = ties.get(r, 0) + 1
    correction = sum(t**3 - t for t in ties.values()) / (big_n * (big_n - 1))
    variance = n * m / 12 * ((big_n + 1) - correction)
    if variance <= 0:
        return 1.0
    z = max(0.0, abs(u - mu) - 0.5) / math.sqrt(variance)
    return min(1.0, math.erfc(z / math.sqrt(2)))


def vargha_delaney_a12(xs: Sequence[float], ys: Sequence[float]) -> float:
    """P(X > Y) + 0.5 P(X = Y), counted over all pairs."""
    _check(xs, ys)
    greater = ties = 0
    for x in xs:
        for y in ys:
            if x > y:
                greater += 1
            elif x == y:
                ties += 1
    return (greater + 0.5 * ties) / (len(xs) * len(ys))


@dataclass(frozen=True)
class StatResult:
    p_value: float
    a12: float
    direction: str

    @property
    def significant(self) -> bool:
        return self.p_value < ALPHA


def direction_of(a12: float) -> str:
    """``first-better`` when the first sample tends to be larger."""
    if a12 > 0.5:
        return FIRST_BETTER
    if a12 < 0.5:
        return SECOND_BETTER
    return IDENTICAL


def compare(xs: Sequence[float], ys: Sequence[float]) -> StatResult:
    a12 = vargha_delaney_a12(xs, ys)
    return StatResult(wilcoxon_rank_sum(xs, ys), a12, direction_of(a12))
