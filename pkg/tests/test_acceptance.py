"""Acceptance criteria 1-9, each printing one PASS/FAIL line.

Criteria 1-4 and 9 share one full experiment: the bundled corpus, MOSA and
G-MOSA, 30 repetitions at 20,000 fitness evaluations per run.
"""

from __future__ import annotations

import itertools
import math

import pytest

from conftest import counter_bump, counter_set_get, load
from gmosa import CORPUS_DIR
from gmosa.analysis import generate_mutants, mutation_score
from gmosa.genome import INTRA_CLASS, INTRA_METHOD
from gmosa.harness import ExperimentConfig, run_experiment, vargha_delaney_a12, wilcoxon_rank_sum
from gmosa.harness.experiment import HYPOTHESIS_METRICS
from gmosa.runtime import branch_distance, capture_assertions, execute, normalize
from oracles import brute_a12, brute_p

BUDGET = 20_000
REPETITIONS = 30
EASY = ("Counter", "Toggle", "Thermostat")
TIME_LIMIT = 300.0


def report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


@pytest.fixture(scope="module")
def full(tmp_path_factory):
    config = ExperimentConfig(
        corpus=CORPUS_DIR,
        algorithms=("mosa", "gmosa"),
        repetitions=REPETITIONS,
        budget_evaluations=BUDGET,
        population_size=50,
        master_seed=2024,
        output_dir=tmp_path_factory.mktemp("full"),
    )
    return config, run_experiment(config)


def gmosa_cells(report_):
    return [c for c in report_.cells if c.algorithm == "gmosa" and c.error is None]


def test_criterion_1_granularity(full, capsys):
    config, rep = full
    cuts = {name: load(name) for name in rep.classes}
    cells = gmosa_cells(rep)
    phase1 = [(c.class_name, t) for c in cells for t in c.suite.tests_with_label(INTRA_METHOD)]
    bad = [(n, t) for n, t in phase1 if t.production_calls(cuts[n]) != 1]
    eager = sum(1 for n, t in phase1 if t.production_calls(cuts[n]) >= 2)
    seconds = sum(c.search_seconds for c in cells)
    ok = (
        len(rep.classes) >= 10
        and len(cells) == len(rep.classes) * REPETITIONS
        and phase1
        and not bad
        and eager == 0
        and seconds < TIME_LIMIT
    )
    report(
        capsys,
        1,
        ok,
        f"{len(cells)} G-MOSA runs over {len(rep.classes)} classes, {len(phase1)} phase-1 tests, "
        f"{len(bad)} without exactly one production call, eager={eager}, search time {seconds:.1f}s < {TIME_LIMIT:.0f}s",
    )


def test_criterion_2_handoff_and_early_return(full, capsys):
    _, rep = full
    cells = gmosa_cells(rep)
    mismatched = []
    for c in cells:
        s = c.suite
        if INTRA_CLASS in s.phase_targets:
            if s.phase_targets[INTRA_CLASS] != s.targets - s.phase_covered[INTRA_METHOD]:
                mismatched.append(c)
            if not s.phase_covered[INTRA_CLASS] <= s.phase_targets[INTRA_CLASS]:
                mismatched.append(c)
        elif s.tests_with_label(INTRA_CLASS) or s.phase_covered[INTRA_METHOD] != s.targets:
            mismatched.append(c)
    counter_pure = [c for c in cells if c.class_name == "Counter" and not c.suite.tests_with_label(INTRA_CLASS)]
    ok = not mismatched and len(counter_pure) >= 1
    report(
        capsys,
        2,
        ok,
        f"{len(mismatched)} handoff violations in {len(cells)} runs; "
        f"{len(counter_pure)}/{REPETITIONS} Counter runs returned only intra-method tests",
    )


def test_criterion_3_budget_accounting(full, capsys):
    _, rep = full
    cap = math.ceil(0.5 * BUDGET)
    over = []
    for c in rep.cells:
        if c.error is not None:
            continue
        s = c.suite
        phases = s.phase_evaluations.values() if c.algorithm == "gmosa" else ()
        if s.evaluations > BUDGET or any(v > cap for v in phases):
            over.append((c.class_name, c.algorithm, c.repetition))
        if sum(s.phase_evaluations.values()) != s.evaluations:
            over.append((c.class_name, c.algorithm, c.repetition))
    report(capsys, 3, not over, f"{len(over)} of {len(rep.cells)} runs over budget (phase cap {cap}, total {BUDGET})")


def _summary_stat_rows(summary: str):
    rows = {}
    in_stats = False
    for line in summary.splitlines():
        if line.startswith("## "):
            in_stats = line == "## Statistics"
            continue
        if in_stats and line.startswith("| ") and not line.startswith("| class"):
            cells = [x.strip() for x in line.strip("|").split("|")]
            rows[(cells[0], cells[2])] = cells
    return rows


def test_criterion_4_coverage_and_statistics(full, capsys):
    _, rep = full
    counts = {}
    for cls in EASY:
        for algo in ("mosa", "gmosa"):
            counts[(cls, algo)] = sum(
                1
                for c, a, _, m, v in rep.rows
                if c == cls and a == algo and m == "branch_coverage" and v == 1.0
            )
    stats = _summary_stat_rows(rep.summary)
    missing = []
    for cls in rep.classes:
        for metric in HYPOTHESIS_METRICS:
            row = stats.get((cls, metric))
            try:
                p, a12 = float(row[7]), float(row[8])
                if not (0 <= p <= 1 and 0 <= a12 <= 1):
                    missing.append((cls, metric))
            except (TypeError, ValueError, IndexError):
                missing.append((cls, metric))
    ok = all(v >= REPETITIONS - 1 for v in counts.values()) and not missing
    detail = ", ".join(f"{c}/{a} {v}/{REPETITIONS}" for (c, a), v in counts.items())
    report(capsys, 4, ok, f"full coverage: {detail}; {len(missing)} missing p/A12 cells over {len(rep.classes)} classes x 6 metrics")


def test_criterion_5_statistics_oracles(capsys):
    samples = [s for k in range(1, 5) for s in itertools.product(range(1, 5), repeat=k)]
    worst = 0.0
    a12_mismatch = 0
    for xs in samples:
        for ys in samples:
            worst = max(worst, abs(wilcoxon_rank_sum(xs, ys) - brute_p(xs, ys)))
            a12_mismatch += vargha_delaney_a12(xs, ys) != brute_a12(xs, ys)
    examples = (
        wilcoxon_rank_sum([1, 2, 3], [1, 2, 3]) == 1.0
        and abs(wilcoxon_rank_sum([1, 2, 3], [4, 5, 6]) - 0.1) <= 1e-12
        and wilcoxon_rank_sum([5, 5], [5, 5]) == 1.0
        and vargha_delaney_a12([1, 2, 3], [4, 5, 6]) == 0.0
        and vargha_delaney_a12([1, 2, 3], [1, 2, 3]) == 0.5
        and vargha_delaney_a12([4, 5, 6], [1, 2, 3]) == 1.0
    )
    ok = worst <= 1e-9 and a12_mismatch == 0 and examples
    report(
        capsys,
        5,
        ok,
        f"{len(samples) ** 2} sample pairs, max |p - exact| = {worst:.2e}, A12 mismatches {a12_mismatch}, worked examples {'hold' if examples else 'fail'}",
    )


# Derived before the build by interpreting every mutant by hand, columns m0..m9:
# by>=0, by!=0, !(by>0), by>1, by>-1, value-by, value/2, value*3, value*1, value*0.
HAND_MATRIX = (
    (0, 0, 1, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
)


def test_criterion_6_mutation_oracle(capsys):
    cut = load("Counter")
    tests = [counter_bump(10, 5), counter_bump(10, 0), counter_bump(10, -1), counter_set_get(10, 7)]
    assertions = [capture_assertions(cut, t) for t in tests]
    expected_values = [a.assertions[0].expected for a in assertions]
    result = mutation_score(cut, generate_mutants(cut), tests, assertions)
    ok = result.matrix == HAND_MATRIX and expected_values == [15, 10, 10, 7]
    report(capsys, 6, ok, f"{len(result.mutant_ids)} mutants, kill matrix {'matches' if ok else 'differs from'} hand execution, score {result.score:.2f}")


def test_criterion_7_determinism(tmp_path, capsys):
    def run(seed, name):
        config = ExperimentConfig(
            corpus=CORPUS_DIR,
            algorithms=("mosa", "gmosa"),
            repetitions=3,
            budget_evaluations=2000,
            population_size=20,
            master_seed=seed,
            output_dir=tmp_path / name,
        )
        run_experiment(config)
        return (tmp_path / name / "results.csv").read_bytes()

    first, second, other = run(11, "a"), run(11, "b"), run(12, "c")

    def coverage(data):
        return [line for line in data.decode().splitlines() if ",branch_coverage," in line]

    changed = sum(1 for x, y in zip(coverage(first), coverage(other)) if x != y)
    ok = first == second and changed >= 1
    report(capsys, 7, ok, f"same seed byte-identical: {first == second}; {changed} coverage rows differ under another seed")


GOLDEN = [
    ("<", 7, 10, True, 0),
    ("<", 10, 7, True, 4),
    ("<", 7, 7, True, 1),
    ("<", 7, 10, False, 3),
    ("<=", 7, 7, True, 0),
    ("<=", 8, 7, True, 1),
    ("<=", 3, 7, False, 5),
    (">", 0, 0, True, 1),
    (">", 5, 0, True, 0),
    (">", 5, 0, False, 5),
    (">", -2, 3, True, 6),
    (">=", 1, 3, True, 2),
    (">=", 3, 3, False, 1),
    (">=", 9, 3, False, 7),
    ("==", 7, 10, True, 3),
    ("==", 7, 7, True, 0),
    ("==", 7, 7, False, 1),
    ("!=", 7, 7, True, 1),
    ("!=", 7, 10, False, 3),
    ("!=", 7, 10, True, 0),
    ("==", "bob", "bo", True, 1),
    ("boolean", False, None, True, 1),
]


def test_criterion_8_branch_distance_table(capsys):
    wrong = [case for case in GOLDEN if branch_distance(*case[:4]) != case[4]]
    nu = [normalize(0), normalize(1), normalize(6)]
    nu_ok = nu[0] == 0.0 and nu[1] == 0.5 and abs(nu[2] - 6 / 7) < 1e-15
    cut = load("Counter")
    trace = execute(cut, None, counter_bump(10, 5))
    ok = len(GOLDEN) >= 20 and not wrong and nu_ok and trace.predicates == ((0, True, 0, 5),)
    report(capsys, 8, ok, f"{len(GOLDEN)} golden cases, {len(wrong)} mismatches, nu(0,1,6) = {nu[0]}, {nu[1]}, {nu[2]:.6f}")


def test_criterion_9_metric_identities(full, capsys):
    _, rep = full
    cells = [c for c in rep.cells if c.error is None]
    broken = []
    for c in cells:
        m = c.metrics
        if abs(m["mean_test_loc"] * m["tests"] - m["suite_loc"]) > 1e-9 or m["twmc"] != m["tests"]:
            broken.append((c.class_name, c.algorithm, c.repetition))
    side_by_side = 0
    for line in rep.summary.splitlines():
        parts = [x.strip() for x in line.strip("|").split("|")]
        if len(parts) == 4 and parts[1] == "mean_test_loc" and parts[2] != "n/a" and parts[3] != "n/a":
            side_by_side += 1
    medians = {}
    for cls in rep.classes:
        for algo in ("mosa", "gmosa"):
            xs = sorted(v for c, a, _, mm, v in rep.rows if c == cls and a == algo and mm == "mean_test_loc")
            medians[(cls, algo)] = xs[len(xs) // 2] if len(xs) % 2 else (xs[len(xs) // 2 - 1] + xs[len(xs) // 2]) / 2
    ok = not broken and side_by_side == len(rep.classes)
    with capsys.disabled():
        for cls in rep.classes:
            print(f"  mean test LOC median {cls}: mosa {medians[(cls, 'mosa')]:.2f}, gmosa {medians[(cls, 'gmosa')]:.2f}")
    report(capsys, 9, ok, f"{len(broken)} of {len(cells)} suites break LOC/TWMC identities; {side_by_side} classes report both medians")
