"""Regression assertions captured on the original class."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from gmosa.genome.testcase import MethodCall, TestCase
from gmosa.runtime.interpreter import (
    DEFAULT_STEP_BUDGET,
    NOT_REACHED,
    OK,
    ExecutionTrace,
    execute,
)

VALUE = "value"
ERROR = "error"


@dataclass(frozen=True)
class Assertion:
    index: int
    kind: str  # VALUE or ERROR
    expected: Union[int, bool, str]


@dataclass(frozen=True)
class AssertionSet:
    assertions: tuple[Assertion, ...]

    def __len__(self) -> int:
        return len(self.assertions)

    def __iter__(self):
        return iter(self.assertions)

    @property
    def expected_error(self) -> Optional[tuple[int, str]]:
        for a in self.assertions:
            if a.kind == ERROR:
                return (a.index, a.expected)
        return None

    def violated_by(self, trace: ExecutionTrace) -> bool:
        """Whether ``trace`` (typically of a mutant) breaks these assertions.

        Any error that the original run did not raise counts as a violation,
        even on a statement without a value assertion.
        """
        if trace.error != self.expected_error:
            return True
        observed = dict(trace.observed)
        for a in self.assertions:
            if a.kind == VALUE:
                if trace.outcomes[a.index] != OK or observed.get(a.index) != a.expected:
                    return True
                # bool and int compare equal in Python; the types must match too.
                if type(observed[a.index]) is not type(a.expected):
                    return True
        return False


def assertions_from_trace(test: TestCase, trace: ExecutionTrace) -> AssertionSet:
    observed = dict(trace.observed)
    out = []
    for i, (stmt, outcome) in enumerate(zip(test.statements, trace.outcomes)):
        if outcome == NOT_REACHED:
            break
        if outcome != OK:
            out.append(Assertion(i, ERROR, outcome))
            break
        if isinstance(stmt, MethodCall) and i in observed:
            out.append(Assertion(i, VALUE, observed[i]))
    return AssertionSet(tuple(out))


def capture_assertions(cut, test: TestCase, step_budget: int = DEFAULT_STEP_BUDGET) -> AssertionSet:
    return assertions_from_trace(test, execute(cut, None, test, step_budget))
