"""Independent brute-force oracles shared by the unit and acceptance tests."""

from __future__ import annotations

import itertools
from functools import lru_cache


@lru_cache(maxsize=None)
def _brute_sorted(xs: tuple, ys: tuple) -> float:
    pooled = xs + ys
    n = len(pooled)
    order = sorted(pooled)
    # Doubled mid-rank: first + last position (1-based) of the value's tie block.
    doubled = {v: (order.index(v) + 1) + (n - order[::-1].index(v)) for v in set(pooled)}
    r = [doubled[v] for v in pooled]
    observed = sum(r[: len(xs)])
    sums = [sum(r[i] for i in c) for c in itertools.combinations(range(n), len(xs))]
    lower = sum(1 for s in sums if s <= observed)
    upper = sum(1 for s in sums if s >= observed)
    return min(1.0, 2 * min(lower, upper) / len(sums))


def brute_p(xs, ys) -> float:
    """Exact two-sided rank-sum p by enumerating every assignment of pooled positions."""
    return _brute_sorted(tuple(sorted(xs)), tuple(sorted(ys)))


def brute_a12(xs, ys) -> float:
    wins = sum(1 for x in xs for y in ys if x > y)
    ties = sum(1 for x in xs for y in ys if x == y)
    return (wins + ties / 2) / (len(xs) * len(ys))


def brute_fronts(rows):
    """Peel non-dominated layers by checking every pair."""
    remaining = list(range(len(rows)))
    fronts = []

    def dominates(a, b):
        return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))

    while remaining:
        front = [i for i in remaining if not any(dominates(rows[j], rows[i]) for j in remaining if j != i)]
        fronts.append(sorted(front))
        remaining = [i for i in remaining if i not in front]
    return fronts
