"""Kill matrix and mutation score."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

from gmosa.runtime.assertions import AssertionSet
from gmosa.runtime.interpreter import DEFAULT_STEP_BUDGET, execute


@dataclass(frozen=True)
class MutationResult:
    score: float
    matrix: tuple[tuple[int, ...], ...]  # rows: tests, columns: mutants
    mutant_ids: tuple[int, ...]

    @property
    def killed(self) -> tuple[int, ...]:
        return tuple(
            mid for j, mid in enumerate(self.mutant_ids) if any(row[j] for row in self.matrix)
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["test", *(f"m{mid}" for mid in self.mutant_ids)])
        for i, row in enumerate(self.matrix):
            writer.writerow([f"test_{i}", *row])
        return buf.getvalue()


def kills(cut, mutant, test, assertions: AssertionSet, step_budget: int = DEFAULT_STEP_BUDGET) -> bool:
    trace = execute(cut, mutant, test, step_budget)
    return assertions.violated_by(trace)


def mutation_score(
    cut,
    mutants: Sequence,
    tests: Sequence,
    assertions: Sequence[AssertionSet],
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> MutationResult:
    """Run every test against every mutant.

    A mutant is killed when some test's run on it breaks the assertions
    captured on the original class.  The score is 0 for an empty mutant list.
    """
    if len(tests) != len(assertions):
        raise ValueError("one assertion set per test is required")
    matrix = tuple(
        tuple(int(kills(cut, m, t, a, step_budget)) for m in mutants)
        for t, a in zip(tests, assertions)
    )
    result = MutationResult(0.0, matrix, tuple(m.id for m in mutants))
    score = len(result.killed) / len(mutants) if mutants else 0.0
    return MutationResult(score, matrix, result.mutant_ids)
