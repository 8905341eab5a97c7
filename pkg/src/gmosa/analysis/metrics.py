"""Size, complexity, coupling and smell metrics of a generated suite."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmosa.genome.render import render, rendered_loc
from gmosa.genome.testcase import (
    ConstructorCall,
    FieldRead,
    FieldWrite,
    MethodCall,
    TestCase,
)
from gmosa.runtime.assertions import AssertionSet, capture_assertions
from gmosa.runtime.fitness import fitness
from gmosa.runtime.interpreter import DEFAULT_STEP_BUDGET, execute

EAGER_TEST = "eager_test"
ASSERTION_ROULETTE = "assertion_roulette"
LONG_TEST = "long_test"
SMELLS = (EAGER_TEST, ASSERTION_ROULETTE, LONG_TEST)
LONG_TEST_LOC = 15

# Decision points that would raise a test's cyclomatic complexity above 1.
_DECISION = re.compile(r"\b(if|while|for)\b|&&|\|\||\?")


@dataclass(frozen=True)
class SuiteMetrics:
    tests: int
    suite_loc: int
    mean_test_loc: float
    twmc: int
    efferent_coupling: float
    smell_counts: dict[str, int] = field(default_factory=dict)
    branch_coverage: float = 0.0
    mutation_score: Optional[float] = None


def cyclomatic_complexity(rendered: str) -> int:
    """1 + number of decision points in a rendered test body.

    String literals are blanked first so their contents cannot count.
    """
    lines = rendered.strip().splitlines()[1:-1]
    body = re.sub(r'"(?:[^"\\]|\\.)*"', '""', "\n".join(lines))
    return 1 + len(_DECISION.findall(body))


def referenced_members(test: TestCase) -> set[str]:
    """Distinct class members a test touches: constructors, methods and fields."""
    out = set()
    for s in test.statements:
        if isinstance(s, ConstructorCall):
            out.add(f"new#{s.ctor}")
        elif isinstance(s, MethodCall):
            out.add(s.method)
        elif isinstance(s, (FieldRead, FieldWrite)):
            out.add(f"field:{s.field}")
    return out


def smell_flags(test: TestCase, assertions: AssertionSet, loc: int, cut) -> dict[str, bool]:
    return {
        EAGER_TEST: test.production_calls(cut) >= 2,
        ASSERTION_ROULETTE: len(assertions) >= 2,
        LONG_TEST: loc > LONG_TEST_LOC,
    }


def branch_coverage(cut, tests: Sequence[TestCase], step_budget: int = DEFAULT_STEP_BUDGET) -> float:
    """Fraction of targets covered when the tests are re-executed."""
    if not cut.targets:
        return 1.0
    covered: set[int] = set()
    for t in tests:
        covered |= fitness(cut, execute(cut, None, t, step_budget)).covered()
    return len(covered) / len(cut.targets)


def suite_metrics(
    tests: Sequence[TestCase],
    cut,
    assertions: Optional[Sequence[AssertionSet]] = None,
    rendered: Optional[Sequence[str]] = None,
    mutation_score: Optional[float] = None,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> SuiteMetrics:
    """Metrics of a suite; assertions and renderings are derived when absent."""
    if assertions is None:
        assertions = [capture_assertions(cut, t, step_budget) for t in tests]
    if rendered is None:
        rendered = [render(t, a, cut, i) for i, (t, a) in enumerate(zip(tests, assertions))]
    locs = [rendered_loc(r) for r in rendered]
    suite_loc = sum(locs)
    n = len(tests)
    smells = dict.fromkeys(SMELLS, 0)
    for t, a, loc in zip(tests, assertions, locs):
        for name, present in smell_flags(t, a, loc, cut).items():
            smells[name] += int(present)
    return SuiteMetrics(
        tests=n,
        suite_loc=suite_loc,
        mean_test_loc=suite_loc / n if n else 0.0,
        twmc=sum(cyclomatic_complexity(r) for r in rendered),
        efferent_coupling=sum(len(referenced_members(t)) for t in tests) / n if n else 0.0,
        smell_counts=smells,
        branch_coverage=branch_coverage(cut, tests, step_budget),
        mutation_score=mutation_score,
    )
