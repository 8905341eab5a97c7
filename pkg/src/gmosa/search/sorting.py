"""Preference sorting: per-target champions first, then non-dominated fronts."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def non_dominated_fronts(objectives: np.ndarray) -> list[list[int]]:
    """Fast non-dominated sorting (minimisation) over the rows of ``objectives``."""
    n = objectives.shape[0]
    if n == 0:
        return []
    if objectives.shape[1] == 0:
        return [list(range(n))]
    a = objectives[:, None, :]
    b = objectives[None, :, :]
    dominates = np.all(a <= b, axis=2) & np.any(a < b, axis=2)
    dominated_by = dominates.sum(axis=0)
    fronts: list[list[int]] = []
    remaining = dominated_by.copy()
    assigned = np.zeros(n, dtype=bool)
    current = [i for i in range(n) if remaining[i] == 0]
    while current:
        fronts.append(current)
        assigned[current] = True
        remaining = remaining - dominates[current].sum(axis=0)
        current = [i for i in range(n) if not assigned[i] and remaining[i] == 0]
    return fronts


def preference_sort(
    fitness: np.ndarray, lengths: Sequence[int], uncovered: Sequence[int]
) -> list[list[int]]:
    """Rank a population.

    ``fitness`` has one row per test and one column per target; ``uncovered``
    lists the columns still to cover.  Front 0 holds, for every uncovered
    target, the test with the lowest value on it (shorter test, then lower
    index on ties).  The rest are ranked by non-dominated sorting on the
    uncovered columns.
    """
    n = fitness.shape[0]
    if n == 0:
        return []
    cols = list(uncovered)
    if not cols:
        return [list(range(n))]
    sub = fitness[:, cols]
    lengths = np.asarray(lengths)
    preferred: list[int] = []
    chosen = set()
    for j in range(len(cols)):
        # lexsort keys run last-to-first: value, then length, then index.
        order = np.lexsort((np.arange(n), lengths, sub[:, j]))
        best = int(order[0])
        if best not in chosen:
            chosen.add(best)
            preferred.append(best)
    preferred.sort()
    rest = [i for i in range(n) if i not in chosen]
    fronts = [preferred]
    for front in non_dominated_fronts(sub[rest]):
        fronts.append([rest[i] for i in front])
    return fronts
