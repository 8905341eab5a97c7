"""MOSA generational loop, the two-phase G-MOSA orchestrator and a random baseline."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from gmosa.genome.generation import UntestableClassError, random_test
from gmosa.genome.testcase import (
    INTRA_CLASS,
    INTRA_METHOD,
    UNRESTRICTED,
    GeneratorConfig,
    TestCase,
)
from gmosa.genome.variation import crossover, mutate_test
from gmosa.runtime.fitness import FitnessVector, fitness
from gmosa.runtime.interpreter import execute
from gmosa.search.archive import Archive
from gmosa.search.sorting import preference_sort

__all__ = [
    "SearchConfig",
    "Suite",
    "Evaluator",
    "UntestableClassError",
    "generate_tests",
    "g_mosa",
    "mosa",
    "random_baseline",
]


@dataclass(frozen=True)
class SearchConfig:
    population_size: int = 50
    total_budget: int = 20_000
    phase_split: float = 0.5
    crossover_rate: float = 0.75
    tournament_size: int = 2
    seed: int = 0
    time_budget: Optional[float] = None
    step_budget: int = 10_000
    generator: GeneratorConfig = field(default_factory=GeneratorConfig)

    def __post_init__(self) -> None:
        if self.population_size < 1:
            raise ValueError("population_size must be positive")
        if self.total_budget < 0:
            raise ValueError("total_budget must be non-negative")
        if not 0.0 < self.phase_split < 1.0:
            raise ValueError("phase_split must lie strictly between 0 and 1")
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must be a probability")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")

    def phase_one_budget(self) -> int:
        return math.ceil(self.phase_split * self.total_budget)


@dataclass
class Suite:
    """Result of a run: archived tests plus coverage bookkeeping."""

    tests: list[TestCase]
    targets: frozenset[int]
    covered: frozenset[int]
    uncovered: frozenset[int]
    evaluations: int = 0
    phase_evaluations: dict[str, int] = field(default_factory=dict)
    phase_targets: dict[str, frozenset[int]] = field(default_factory=dict)
    phase_covered: dict[str, frozenset[int]] = field(default_factory=dict)
    history: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.covered & self.uncovered or (self.covered | self.uncovered) != self.targets:
            raise ValueError("covered and uncovered must partition the targets")

    def tests_with_label(self, label: str) -> list[TestCase]:
        return [t for t in self.tests if t.phase_label == label]


class BudgetExhausted(Exception):
    pass


class Evaluator:
    """Runs tests on the original class and counts fitness evaluations."""

    def __init__(self, cut, budget: int, step_budget: int = 10_000, deadline: Optional[float] = None) -> None:
        self.cut = cut
        self.budget = budget
        self.step_budget = step_budget
        self.deadline = deadline
        self.used = 0

    @property
    def remaining(self) -> int:
        return self.budget - self.used

    def exhausted(self) -> bool:
        if self.used >= self.budget:
            return True
        return self.deadline is not None and time.monotonic() >= self.deadline

    def evaluate(self, test: TestCase) -> FitnessVector:
        if self.exhausted():
            raise BudgetExhausted
        self.used += 1
        trace = execute(self.cut, None, test, self.step_budget)
        test.cached_fitness = fitness(self.cut, trace)
        return test.cached_fitness


class _Run:
    """State of one MOSA run restricted to a set of targets."""

    def __init__(self, cut, targets, evaluator: Evaluator, mode: str, config: SearchConfig, rng) -> None:
        self.cut = cut
        self.evaluator = evaluator
        self.config = config
        self.rng = rng
        self.mode = mode
        self.gen_config = GeneratorConfig(
            max_length=config.generator.max_length,
            max_attempts=config.generator.max_attempts,
            insertion_uut=config.generator.insertion_uut,
            insertion_set=config.generator.insertion_set,
            mode=mode,
        )
        self.label = INTRA_METHOD if mode == INTRA_METHOD else INTRA_CLASS
        self.archive = Archive(tuple(sorted(targets)))
        self.history: list[int] = []

    def admissible(self, test: TestCase) -> bool:
        # Phase-1 tests must exercise exactly one production method.
        return self.mode != INTRA_METHOD or test.production_calls(self.cut) == 1

    def evaluate(self, test: TestCase) -> None:
        fv = self.evaluator.evaluate(test)
        test.phase_label = self.label
        if self.admissible(test):
            self.archive.update(test, fv)

    def done(self) -> bool:
        return not self.archive.uncovered or self.evaluator.exhausted()

    def fresh(self) -> TestCase:
        test = random_test(self.cut, self.gen_config, self.rng)
        test.phase_label = self.label
        return test

    def select(self, population: list[TestCase], ranks: list[int], scores: list[float]) -> TestCase:
        rng = self.rng
        best = rng.randrange(len(population))
        for _ in range(self.config.tournament_size - 1):
            other = rng.randrange(len(population))
            if (ranks[other], scores[other]) < (ranks[best], scores[best]):
                best = other
        return population[best]

    def rank(self, population: list[TestCase]):
        """Fronts plus per-test rank and uncovered-sum, over the live targets."""
        live = sorted(self.archive.uncovered)
        matrix = np.array([t.cached_fitness.values for t in population], dtype=float)
        lengths = [len(t) for t in population]
        fronts = preference_sort(matrix, lengths, live)
        sums = matrix[:, live].sum(axis=1) if live else np.zeros(len(population))
        ranks = [0] * len(population)
        for r, front in enumerate(fronts):
            for i in front:
                ranks[i] = r
        return fronts, ranks, sums.tolist()

    def survivors(self, union: list[TestCase]) -> list[TestCase]:
        fronts, _, sums = self.rank(union)
        keep: list[int] = []
        for front in fronts:
            if len(keep) + len(front) <= self.config.population_size:
                keep.extend(front)
            else:
                room = self.config.population_size - len(keep)
                keep.extend(sorted(front, key=lambda i: (sums[i], i))[:room])
            if len(keep) >= self.config.population_size:
                break
        return [union[i] for i in keep]

    def run(self) -> None:
        population: list[TestCase] = []
        try:
            while len(population) < self.config.population_size and not self.done():
                test = self.fresh()
                self.evaluate(test)
                population.append(test)
            self.history.append(len(self.archive.covered))
            while not self.done():
                _, ranks, sums = self.rank(population)
                offspring: list[TestCase] = []
                try:
                    while len(offspring) < self.config.population_size:
                        a = self.select(population, ranks, sums)
                        b = self.select(population, ranks, sums)
                        if self.rng.random() < self.config.crossover_rate:
                            a, b = crossover(a, b, self.cut, self.gen_config, self.rng)
                        for child in (a, b):
                            child = mutate_test(child, self.cut, self.gen_config, self.rng)
                            if not child.statements:
                                child = self.fresh()
                            self.evaluate(child)
                            offspring.append(child)
                            if self.done():
                                raise BudgetExhausted
                finally:
                    if offspring:
                        population = self.survivors(population + offspring)
                    self.history.append(len(self.archive.covered))
        except BudgetExhausted:
            pass


def generate_tests(
    cut,
    targets: Iterable[int],
    budget: int,
    mode: str,
    config: SearchConfig,
    rng,
    deadline: Optional[float] = None,
) -> tuple[Suite, frozenset[int]]:
    """Run MOSA on ``targets`` with at most ``budget`` fitness evaluations."""
    if mode not in (INTRA_METHOD, UNRESTRICTED):
        raise ValueError(f"unknown mode {mode!r}")
    targets = frozenset(targets)
    all_ids = {t.id for t in cut.targets}
    if not targets <= all_ids:
        raise ValueError("targets must belong to the class")
    if not cut.constructors:
        raise UntestableClassError(f"class {cut.name} has no constructor")
    evaluator = Evaluator(cut, budget, config.step_budget, deadline)
    run = _Run(cut, targets, evaluator, mode, config, rng)
    if targets and budget > 0:
        run.run()
    covered = frozenset(run.archive.covered)
    uncovered = targets - covered
    label = run.label
    suite = Suite(
        tests=run.archive.tests(),
        targets=targets,
        covered=covered,
        uncovered=uncovered,
        evaluations=evaluator.used,
        phase_evaluations={label: evaluator.used},
        phase_targets={label: targets},
        phase_covered={label: covered},
        history=run.history,
    )
    return suite, uncovered


def _deadline(config: SearchConfig, fraction: float = 1.0) -> Optional[float]:
    if config.time_budget is None:
        return None
    return time.monotonic() + config.time_budget * fraction


def _time_mode_budget(config: SearchConfig, budget: int) -> int:
    # In wall-clock mode the evaluation count is unbounded.
    return budget if config.time_budget is None else 2**62


def g_mosa(cut, config: SearchConfig, rng) -> Suite:
    """Intra-method search on half the budget, then MOSA on what is left uncovered."""
    targets = frozenset(t.id for t in cut.targets)
    first_budget = config.phase_one_budget()
    first, remaining = generate_tests(
        cut,
        targets,
        _time_mode_budget(config, first_budget),
        INTRA_METHOD,
        config,
        rng,
        _deadline(config, config.phase_split),
    )
    if not remaining:
        return first
    # Budget left unused by phase 1 is not rolled over.
    second_budget = _time_mode_budget(config, config.total_budget - first_budget)
    second, _ = generate_tests(
        cut,
        remaining,
        second_budget,
        UNRESTRICTED,
        config,
        rng,
        _deadline(config, 1.0 - config.phase_split),
    )
    return Suite(
        tests=first.tests + second.tests,
        targets=targets,
        covered=first.covered | second.covered,
        uncovered=targets - first.covered - second.covered,
        evaluations=first.evaluations + second.evaluations,
        phase_evaluations={**first.phase_evaluations, **second.phase_evaluations},
        phase_targets={**first.phase_targets, **second.phase_targets},
        phase_covered={**first.phase_covered, **second.phase_covered},
        history=first.history + [len(first.covered) + c for c in second.history],
    )


def mosa(cut, config: SearchConfig, rng) -> Suite:
    targets = frozenset(t.id for t in cut.targets)
    suite, _ = generate_tests(
        cut,
        targets,
        _time_mode_budget(config, config.total_budget),
        UNRESTRICTED,
        config,
        rng,
        _deadline(config),
    )
    return suite


def random_baseline(cut, config: SearchConfig, rng) -> Suite:
    """Independent unrestricted random tests, archiving every coverer."""
    if not cut.constructors:
        raise UntestableClassError(f"class {cut.name} has no constructor")
    targets = frozenset(t.id for t in cut.targets)
    evaluator = Evaluator(
        cut, _time_mode_budget(config, config.total_budget), config.step_budget, _deadline(config)
    )
    gen = GeneratorConfig(
        max_length=config.generator.max_length,
        max_attempts=config.generator.max_attempts,
        insertion_uut=config.generator.insertion_uut,
        insertion_set=config.generator.insertion_set,
        mode=UNRESTRICTED,
    )
    archive = Archive(tuple(sorted(targets)))
    history = []
    while archive.uncovered and not evaluator.exhausted():
        test = random_test(cut, gen, rng)
        test.phase_label = INTRA_CLASS
        archive.update(test, evaluator.evaluate(test))
        history.append(len(archive.covered))
    covered = frozenset(archive.covered)
    return Suite(
        tests=archive.tests(),
        targets=targets,
        covered=covered,
        uncovered=targets - covered,
        evaluations=evaluator.used,
        phase_evaluations={INTRA_CLASS: evaluator.used},
        phase_targets={INTRA_CLASS: targets},
        phase_covered={INTRA_CLASS: covered},
        history=history,
    )
