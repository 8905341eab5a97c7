from __future__ import annotations

import hashlib
import itertools
import json
import math
import shutil
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats as sps

from gmosa import CORPUS_DIR
from gmosa.harness import (
    CorpusError,
    ExperimentConfig,
    compare,
    mix_seed,
    run_experiment,
    vargha_delaney_a12,
    wilcoxon_rank_sum,
)
from gmosa.harness.cli import main
from gmosa.harness.experiment import ConfigError, read_rows, summary_from_directory
from gmosa.harness.stats import midranks
from oracles import brute_a12, brute_p


def test_worked_examples():
    assert wilcoxon_rank_sum([1, 2, 3], [1, 2, 3]) == 1.0
    assert wilcoxon_rank_sum([1, 2, 3], [4, 5, 6]) == pytest.approx(0.1, abs=1e-12)
    assert wilcoxon_rank_sum([5, 5], [5, 5]) == 1.0
    assert vargha_delaney_a12([1, 2, 3], [1, 2, 3]) == 0.5
    assert vargha_delaney_a12([1, 2, 3], [4, 5, 6]) == 0.0
    assert vargha_delaney_a12([4, 5, 6], [1, 2, 3]) == 1.0


def test_exhaustive_small_samples():
    samples = [s for k in range(1, 5) for s in itertools.product(range(1, 5), repeat=k)]
    for xs in samples:
        for ys in samples:
            assert abs(wilcoxon_rank_sum(xs, ys) - brute_p(xs, ys)) <= 1e-9
            assert vargha_delaney_a12(xs, ys) == brute_a12(xs, ys)


def test_exact_matches_scipy_without_ties():
    for xs, ys in [([1, 3, 5], [2, 4, 6, 8]), ([10, 11], [1, 2, 3, 4, 5, 6]), ([1.5, 2.5, 9.0, 7.0, 3.0, 4.0], [5.0, 6.0, 8.0, 10.0, 11.0, 12.0])]:
        ref = sps.mannwhitneyu(xs, ys, alternative="two-sided", method="exact").pvalue
        assert wilcoxon_rank_sum(xs, ys) == pytest.approx(ref, abs=1e-12)


@given(
    st.lists(st.integers(0, 6), min_size=7, max_size=30),
    st.lists(st.integers(0, 6), min_size=7, max_size=30),
)
def test_normal_approximation_matches_scipy(xs, ys):
    if len(set(xs + ys)) == 1:
        assert wilcoxon_rank_sum(xs, ys) == 1.0
        return
    ref = sps.mannwhitneyu(xs, ys, alternative="two-sided", method="asymptotic", use_continuity=True).pvalue
    assert wilcoxon_rank_sum(xs, ys) == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_midranks():
    assert midranks([3, 1, 3, 2]) == [3.5, 1.0, 3.5, 2.0]


def test_empty_samples_rejected():
    with pytest.raises(ValueError):
        wilcoxon_rank_sum([], [1])
    with pytest.raises(ValueError):
        vargha_delaney_a12([1], [])


_distinct = st.lists(st.integers(-50, 50), min_size=1, max_size=8, unique=True)


@given(_distinct, _distinct)
def test_a12_complement(xs, ys):
    if set(xs) & set(ys):
        return
    assert vargha_delaney_a12(xs, ys) + vargha_delaney_a12(ys, xs) == 1.0


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=8), st.lists(st.integers(-20, 20), min_size=1, max_size=8))
def test_a12_invariant_under_increasing_transform(xs, ys):
    f = lambda v: math.exp(v / 7) * 3 + 1  # noqa: E731
    assert vargha_delaney_a12(xs, ys) == vargha_delaney_a12([f(x) for x in xs], [f(y) for y in ys])


def test_direction_semantics():
    assert compare([1, 2, 3], [4, 5, 6]).direction == "second-better"
    assert compare([4, 5, 6], [1, 2, 3]).direction == "first-better"
    assert compare([1, 2], [1, 2]).direction == "identical"


def test_seed_mixing():
    digest = hashlib.blake2b(b"7|Counter|gmosa|3", digest_size=8).digest()
    assert mix_seed(7, "Counter", "gmosa", 3) == int.from_bytes(digest, "big")
    cells = {mix_seed(0, c, a, r) for c in ("A", "B") for a in ("mosa", "gmosa") for r in range(5)}
    assert len(cells) == 20
    assert 0 <= mix_seed(1, "X", "mosa", 0) < 2**64


def small_config(tmp_path: Path, **overrides) -> ExperimentConfig:
    corpus = tmp_path / "corpus"
    if not corpus.exists():
        corpus.mkdir()
        for name in ("Counter", "Toggle", "Lock"):
            shutil.copy(CORPUS_DIR / f"{name}.mini", corpus)
    base = dict(
        corpus=corpus,
        algorithms=("mosa", "gmosa"),
        repetitions=2,
        budget_evaluations=600,
        population_size=10,
        master_seed=5,
        output_dir=tmp_path / "out",
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def test_experiment_outputs(tmp_path):
    config = small_config(tmp_path)
    report = run_experiment(config)
    assert len(report.rows) == 3 * 2 * 2 * len(config.metrics)
    seen = {(c, a, r, m) for c, a, r, m, _ in report.rows}
    assert len(seen) == len(report.rows)
    out = config.output_dir
    assert read_rows(out / "results.csv")[0][:4] == ("Counter", "mosa", 0, "branch_coverage")
    summary = (out / "summary.md").read_text()
    assert "## Statistics" in summary and "(mosa, gmosa)" in summary
    for metric in ("branch_coverage", "mutation_score", "mean_test_loc", "twmc", "efferent_coupling", "smell_count"):
        assert sum(1 for line in summary.splitlines() if f"| {metric} |" in line and "H" in line) == 3
    suite = json.loads((out / "runs" / "rep000" / "Lock.gmosa.suite.json").read_text())
    assert suite["class"] == "Lock" and suite["tests"]
    assert (out / "runs" / "rep001" / "Counter.mosa.tests.txt").read_text().startswith("test_0 {")
    assert (out / "runs" / "rep000" / "Toggle.gmosa.kill.csv").read_text().startswith("test,m0")
    assert summary_from_directory(out) == summary


def test_single_algorithm_has_no_statistics(tmp_path):
    report = run_experiment(small_config(tmp_path, algorithms=("mosa",), repetitions=1))
    assert "## Statistics" not in report.summary


def test_duplicate_algorithm_entries_still_report(tmp_path):
    report = run_experiment(small_config(tmp_path, algorithms=("mosa", "gmosa", "gmosa"), repetitions=1))
    assert "## Statistics" in report.summary


def test_failed_cells_are_reported(tmp_path):
    config = small_config(tmp_path, repetitions=1)
    (config.corpus / "NoCtor.mini").write_text("class NoCtor { int x; int f() { return x; } }")
    report = run_experiment(config)
    assert {(c, a) for c, a, _, _ in report.failures} == {("NoCtor", "mosa"), ("NoCtor", "gmosa")}
    assert "NoCtor / mosa / repetition 0" in report.summary
    assert not [r for r in report.rows if r[0] == "NoCtor"]


def test_corpus_parse_error_names_file(tmp_path):
    config = small_config(tmp_path)
    (config.corpus / "Bad.mini").write_text("class Bad { int x }")
    with pytest.raises(CorpusError, match=r"Bad\.mini:1:"):
        run_experiment(config)


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig(repetitions=0)
    with pytest.raises(ConfigError):
        ExperimentConfig(algorithms=())
    with pytest.raises(ConfigError):
        ExperimentConfig(algorithms=("nsga",))
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"repetitions": 1, "colour": "red"}))
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json(path)


def test_seed_isolation(tmp_path):
    a = run_experiment(small_config(tmp_path, repetitions=2, output_dir=tmp_path / "a"))
    b = run_experiment(small_config(tmp_path, repetitions=3, output_dir=tmp_path / "b"))
    # Adding a repetition leaves the existing cells' rows untouched.
    assert set(a.rows) <= set(b.rows)


def test_cli_parse(capsys):
    assert main(["parse", str(CORPUS_DIR / "Counter.mini")]) == 0
    out = capsys.readouterr().out
    assert "targets: 7" in out and "setters: {setValue}" in out
    assert sum(1 for line in out.splitlines() if line.startswith("  t")) == 7


def test_cli_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--algo", "mosa"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["parse", "--bogus"])
    assert exc.value.code == 1
    bad = tmp_path / "Bad.mini"
    bad.write_text("class Bad { int f( }")
    assert main(["parse", str(bad)]) == 2
    assert "Bad.mini:1:" in capsys.readouterr().err
    assert main(["parse", str(tmp_path / "missing.mini")]) == 1


def test_cli_generate_and_mutants(tmp_path, capsys):
    counter = str(CORPUS_DIR / "Counter.mini")
    assert main(["generate", "--class", counter, "--algo", "gmosa", "--budget", "2000", "--seed", "1", "--output", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "covered 7/7" in out
    assert (tmp_path / "Counter.gmosa.tests.txt").exists()
    assert main(["generate", "--class", counter, "--intra-only", "--budget", "500"]) == 0
    assert main(["mutants", counter]) == 0
    assert "10 mutants" in capsys.readouterr().out


def test_cli_experiment_twice_identical(tmp_path, capsys):
    config = small_config(tmp_path)
    data = {
        "corpus": "corpus",
        "algorithms": ["mosa", "gmosa"],
        "repetitions": 2,
        "budget_evaluations": 500,
        "population_size": 10,
        "master_seed": 3,
    }
    for name in ("x", "y"):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps({**data, "output_dir": f"run-{name}"}))
        assert main(["experiment", "--config", str(path)]) == 0
    files_x = sorted(p.relative_to(tmp_path / "run-x") for p in (tmp_path / "run-x").rglob("*") if p.is_file())
    files_y = sorted(p.relative_to(tmp_path / "run-y") for p in (tmp_path / "run-y").rglob("*") if p.is_file())
    assert files_x == files_y
    for rel in files_x:
        assert (tmp_path / "run-x" / rel).read_bytes() == (tmp_path / "run-y" / rel).read_bytes()
    capsys.readouterr()
    assert main(["report", "--in", str(tmp_path / "run-x")]) == 0
    assert capsys.readouterr().out == (tmp_path / "run-x" / "summary.md").read_text()
    assert main(["report", "--in", str(tmp_path / "nowhere")]) == 1
    assert config.corpus.exists()
