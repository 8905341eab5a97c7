from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load
from gmosa.genome import INTRA_CLASS, INTRA_METHOD, UNRESTRICTED, TestCase
from gmosa.genome.testcase import Primitive
from gmosa.runtime import execute, fitness
from gmosa.runtime.fitness import FitnessVector
from gmosa.search import (
    Archive,
    SearchConfig,
    UntestableClassError,
    g_mosa,
    generate_tests,
    mosa,
    non_dominated_fronts,
    preference_sort,
    random_baseline,
)
from gmosa.minilang import parse_class
from oracles import brute_fronts


def test_preference_single_target_minimum():
    fronts = preference_sort(np.array([[0.5], [0.2]]), [3, 3], [0])
    assert fronts[0] == [1]


def test_preference_tie_broken_by_length():
    fronts = preference_sort(np.array([[0.4, 0.4], [0.4, 0.4]]), [5, 2], [0, 1])
    assert fronts[0] == [1]
    assert fronts[1] == [0]


def test_preference_tie_broken_by_index():
    fronts = preference_sort(np.array([[0.4], [0.4]]), [2, 2], [0])
    assert fronts == [[0], [1]]


def test_four_tests_two_targets():
    vectors = [(0.1, 0.9), (0.9, 0.1), (0.5, 0.5), (0.6, 0.6)]
    fronts = preference_sort(np.array(vectors), [1, 1, 1, 1], [0, 1])
    assert fronts == [[0, 1], [2], [3]]
    assert fronts[1:] == [[i + 2 for i in f] for f in brute_fronts(vectors[2:])]


def test_sorting_restricted_to_uncovered_columns():
    m = np.array([[0.0, 0.9], [0.5, 0.1], [0.3, 0.3]])
    # Column 0 is covered: only column 1 ranks the tests.
    assert preference_sort(m, [1, 1, 1], [1]) == [[1], [2], [0]]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(*[st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0])] * 3), min_size=1, max_size=12))
def test_non_dominated_matches_brute_force(rows):
    got = [sorted(f) for f in non_dominated_fronts(np.array(rows, dtype=float))]
    assert got == brute_fronts(rows)


def fv(*values):
    return FitnessVector(tuple(values))


def test_archive_rules(counter):
    archive = Archive((0, 1))
    five = TestCase([Primitive("int", 0)] * 5)
    other_five = TestCase([Primitive("int", 1)] * 5)
    three = TestCase([Primitive("int", 2)] * 3)
    assert archive.update(five, fv(0.0, 0.5)) == [0]
    assert archive.best[0] is five and archive.uncovered == {1}
    assert archive.update(other_five, fv(0.0, 0.5)) == []
    assert archive.best[0] is five
    assert archive.update(three, fv(0.0, 0.0)) == [0, 1]
    assert archive.best == {0: three, 1: three}
    assert archive.tests() == [three]


def test_zero_budget_gives_empty_suite(counter):
    targets = {t.id for t in counter.targets}
    suite, uncovered = generate_tests(counter, targets, 0, UNRESTRICTED, SearchConfig(), random.Random(0))
    assert suite.tests == [] and uncovered == targets
    for algo in (mosa, random_baseline, g_mosa):
        s = algo(counter, SearchConfig(total_budget=0), random.Random(0))
        assert s.tests == [] and s.evaluations == 0


@pytest.mark.parametrize("seed", range(5))
def test_counter_unrestricted_full_coverage(counter, seed):
    targets = {t.id for t in counter.targets}
    suite, uncovered = generate_tests(counter, targets, 5000, UNRESTRICTED, SearchConfig(), random.Random(seed))
    assert not uncovered and suite.covered == targets


@pytest.mark.parametrize("seed", range(5))
def test_random_baseline_covers_counter(counter, seed):
    suite = random_baseline(counter, SearchConfig(total_budget=10_000), random.Random(seed))
    assert not suite.uncovered


def test_intra_method_archive_has_one_production_call(counter):
    targets = {t.id for t in counter.targets}
    suite, _ = generate_tests(counter, targets, 3000, INTRA_METHOD, SearchConfig(), random.Random(1))
    assert suite.tests
    for t in suite.tests:
        assert t.production_calls(counter) == 1
        assert t.phase_label == INTRA_METHOD


def test_mosa_equals_generate_tests(counter):
    config = SearchConfig(total_budget=2000)
    a = mosa(counter, config, random.Random(9))
    b, _ = generate_tests(counter, {t.id for t in counter.targets}, 2000, UNRESTRICTED, config, random.Random(9))
    assert [t.statements for t in a.tests] == [t.statements for t in b.tests]
    assert a.covered == b.covered and a.evaluations == b.evaluations


@pytest.mark.parametrize("name", ["Counter", "Lock", "TrafficLight"])
def test_determinism(name):
    cut = load(name)
    config = SearchConfig(total_budget=3000, population_size=20)
    runs = [g_mosa(cut, config, random.Random(42)) for _ in range(2)]
    assert [t.statements for t in runs[0].tests] == [t.statements for t in runs[1].tests]
    assert runs[0].history == runs[1].history


def reexecuted_coverage(cut, tests):
    covered = set()
    for t in tests:
        covered |= fitness(cut, execute(cut, None, t)).covered()
    return covered


@pytest.mark.parametrize("name", ["Counter", "Journal", "Lock", "Greeter", "Account"])
def test_g_mosa_invariants(name):
    cut = load(name)
    config = SearchConfig(total_budget=4000, population_size=20)
    for seed in range(3):
        s = g_mosa(cut, config, random.Random(seed))
        assert s.phase_evaluations[INTRA_METHOD] <= config.phase_one_budget()
        assert s.evaluations <= config.total_budget
        phase1 = s.phase_covered[INTRA_METHOD]
        if INTRA_CLASS in s.phase_targets:
            assert s.phase_targets[INTRA_CLASS] == s.targets - phase1
            assert s.phase_covered[INTRA_CLASS] <= s.phase_targets[INTRA_CLASS]
        else:
            assert not s.tests_with_label(INTRA_CLASS)
            assert phase1 == s.targets
        assert s.covered <= reexecuted_coverage(cut, s.tests)
        assert all(a <= b for a, b in zip(s.history, s.history[1:]))
        for t in s.tests_with_label(INTRA_METHOD):
            assert t.production_calls(cut) == 1


def test_counter_early_return(counter):
    s = g_mosa(counter, SearchConfig(), random.Random(0))
    assert not s.uncovered
    assert not s.tests_with_label(INTRA_CLASS)
    assert INTRA_CLASS not in s.phase_evaluations


def test_default_split_is_half():
    assert SearchConfig().phase_one_budget() == 10_000
    assert SearchConfig(total_budget=7).phase_one_budget() == 4


def test_untestable_class_propagates():
    cut = parse_class("class U { int x; int f() { return x; } }")
    for algo in (g_mosa, mosa, random_baseline):
        with pytest.raises(UntestableClassError):
            algo(cut, SearchConfig(total_budget=10), random.Random(0))


@pytest.mark.parametrize(
    "kwargs",
    [{"phase_split": 0.0}, {"phase_split": 1.0}, {"population_size": 0}, {"crossover_rate": 2.0}, {"tournament_size": 0}],
)
def test_search_config_validation(kwargs):
    with pytest.raises(ValueError):
        SearchConfig(**kwargs)


def test_wall_clock_mode_stops(counter):
    cut = load("Lock")
    s = g_mosa(cut, SearchConfig(time_budget=0.5), random.Random(0))
    assert s.evaluations > 0
