"""Per-target fitness vectors.

A branch target's raw score combines the approach level with the normalised
branch distance of the closest predicate that was reached.  Scores are
divided by ``depth + 1`` (the largest raw score a target of that nesting
depth can take) so every component lies in [0, 1]; for top-level
predicates the value is exactly ``d / (d + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from gmosa.minilang.cut import control_parent_chain
from gmosa.runtime.distance import normalize
from gmosa.runtime.interpreter import ExecutionTrace

_INF = float("inf")


@dataclass(frozen=True)
class FitnessVector:
    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]

    def covered(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.values) if v == 0.0)


def _plan(cut):
    plan = cut.cache.get("fitness-plan")
    if plan is None:
        plan = []
        for t in cut.targets:
            if t.is_entry:
                plan.append((True, t.member, None, None, ()))
            else:
                chain = control_parent_chain(cut, t)
                plan.append((False, t.member, t.predicate, t.outcome, chain))
        plan = tuple(plan)
        cut.cache["fitness-plan"] = plan
    return plan


def fitness(cut, traces: Union[ExecutionTrace, Iterable[ExecutionTrace]]) -> FitnessVector:
    """Fitness of one test given the traces of its executions."""
    if isinstance(traces, ExecutionTrace):
        traces = (traces,)
    best_true: dict[int, float] = {}
    best_false: dict[int, float] = {}
    entered: set = set()
    for trace in traces:
        entered |= trace.entered
        for pid, _, dt, df in trace.predicates:
            if dt < best_true.get(pid, _INF):
                best_true[pid] = dt
            if df < best_false.get(pid, _INF):
                best_false[pid] = df
    values = []
    for is_entry, member, pid, outcome, chain in _plan(cut):
        if is_entry:
            values.append(0.0 if member in entered else 1.0)
            continue
        best = best_true if outcome else best_false
        depth = len(chain)
        if pid in best:
            values.append(normalize(best[pid]) / (depth + 1))
            continue
        raw = float(depth + 1)
        # Deepest reached control parent: approach level plus its distance.
        for k in range(depth - 1, -1, -1):
            q, q_outcome = chain[k]
            q_best = best_true if q_outcome else best_false
            if q in q_best:
                raw = (depth - k) + normalize(q_best[q])
                break
        values.append(raw / (depth + 1))
    return FitnessVector(tuple(values))
