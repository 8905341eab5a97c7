"""Experiment runner: every (class, algorithm, repetition) cell, metrics and report."""

from __future__ import annotations

import csv
import io
import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from gmosa import CORPUS_DIR
from gmosa.analysis import generate_mutants, mutation_score, suite_metrics
from gmosa.genome.render import render, statement_to_json
from gmosa.genome.testcase import INTRA_METHOD
from gmosa.harness.report import summary_markdown
from gmosa.harness.seeds import mix_seed
from gmosa.minilang import MiniLangError, parse_class
from gmosa.runtime.assertions import capture_assertions
from gmosa.search import SearchConfig, g_mosa, mosa, random_baseline

logger = logging.getLogger(__name__)

ALGORITHMS = {"gmosa": g_mosa, "mosa": mosa, "random": random_baseline}

# Metric columns in report order.  The first six feed the hypothesis table.
METRICS = (
    "branch_coverage",
    "mutation_score",
    "mean_test_loc",
    "twmc",
    "efferent_coupling",
    "smell_count",
    "suite_loc",
    "tests",
    "eager_test",
    "assertion_roulette",
    "long_test",
    "evaluations",
)
HYPOTHESIS_METRICS = METRICS[:6]
CSV_HEADER = ("class", "algorithm", "repetition", "metric", "value")


class ConfigError(ValueError):
    pass


class CorpusError(Exception):
    """A corpus file failed to parse or type-check."""


@dataclass(frozen=True)
class ExperimentConfig:
    corpus: Path = CORPUS_DIR
    algorithms: tuple[str, ...] = ("mosa", "gmosa")
    repetitions: int = 30
    budget_evaluations: int = 20_000
    population_size: int = 50
    master_seed: int = 0
    output_dir: Path = Path("results")
    metrics: tuple[str, ...] = METRICS
    time_budget_seconds: Optional[float] = None
    jobs: int = 1
    write_suites: bool = True

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise ConfigError("repetitions must be at least 1")
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ConfigError(f"unknown algorithm(s): {', '.join(unknown)}")
        bad = [m for m in self.metrics if m not in METRICS]
        if bad:
            raise ConfigError(f"unknown metric(s): {', '.join(bad)}")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")

    @classmethod
    def from_json(cls, path: Path) -> ExperimentConfig:
        path = Path(path)
        data = json.loads(path.read_text())
        known = {
            "corpus",
            "algorithms",
            "repetitions",
            "budget_evaluations",
            "population_size",
            "master_seed",
            "output_dir",
            "metrics",
            "time_budget_seconds",
            "jobs",
            "write_suites",
        }
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config key(s): {', '.join(sorted(extra))}")
        base = path.parent
        kwargs = dict(data)
        if "corpus" in kwargs:
            kwargs["corpus"] = CORPUS_DIR if kwargs["corpus"] == "bundled" else base / kwargs["corpus"]
        if "output_dir" in kwargs:
            kwargs["output_dir"] = base / kwargs["output_dir"]
        for key in ("algorithms", "metrics"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def search_config(self, seed: int) -> SearchConfig:
        return SearchConfig(
            population_size=self.population_size,
            total_budget=self.budget_evaluations,
            seed=seed,
            time_budget=self.time_budget_seconds,
        )


@dataclass
class CellResult:
    class_name: str
    algorithm: str
    repetition: int
    seed: int
    metrics: dict = field(default_factory=dict)
    tests_text: str = ""
    suite_json: dict = field(default_factory=dict)
    kill_csv: str = ""
    error: Optional[str] = None
    # Not written to any output file: wall time varies between runs.
    search_seconds: float = 0.0
    suite: object = None


@dataclass
class ExperimentReport:
    rows: list[tuple]
    failures: list[tuple]
    summary: str
    classes: list[str]
    cells: list[CellResult] = field(default_factory=list)


def load_corpus(directory: Path) -> list[tuple[str, str]]:
    """``(file name, source)`` pairs; every file must parse (errors propagate)."""
    files = sorted(Path(directory).glob("*.mini"))
    if not files:
        raise ConfigError(f"no .mini files in {directory}")
    out = []
    for f in files:
        source = f.read_text()
        try:
            parse_class(source)
        except MiniLangError as exc:
            raise CorpusError(f"{f}:{exc.line}:{exc.column}: {exc.message}") from exc
        out.append((f.name, source))
    return out


def run_cell(source: str, algorithm: str, repetition: int, config: ExperimentConfig) -> CellResult:
    cut = parse_class(source)
    seed = mix_seed(config.master_seed, cut.name, algorithm, repetition)
    cell = CellResult(cut.name, algorithm, repetition, seed)
    try:
        started = time.perf_counter()
        suite = ALGORITHMS[algorithm](cut, config.search_config(seed), random.Random(seed))
        cell.search_seconds = time.perf_counter() - started
        cell.suite = suite
        tests = suite.tests
        assertions = [capture_assertions(cut, t) for t in tests]
        rendered = [render(t, a, cut, i) for i, (t, a) in enumerate(zip(tests, assertions))]
        mutants = generate_mutants(cut)
        kills = mutation_score(cut, mutants, tests, assertions)
        m = suite_metrics(tests, cut, assertions, rendered, kills.score)
    except Exception as exc:  # recorded as a failed cell
        logger.warning("cell %s/%s/%d failed: %s", cut.name, algorithm, repetition, exc)
        cell.error = f"{type(exc).__name__}: {exc}"
        return cell
    values = {
        "branch_coverage": m.branch_coverage,
        "mutation_score": m.mutation_score,
        "mean_test_loc": m.mean_test_loc,
        "twmc": m.twmc,
        "efferent_coupling": m.efferent_coupling,
        "smell_count": sum(m.smell_counts.values()),
        "suite_loc": m.suite_loc,
        "tests": m.tests,
        "eager_test": m.smell_counts["eager_test"],
        "assertion_roulette": m.smell_counts["assertion_roulette"],
        "long_test": m.smell_counts["long_test"],
        "evaluations": suite.evaluations,
    }
    cell.metrics = {k: values[k] for k in config.metrics}
    cell.tests_text = "\n".join(rendered)
    cell.suite_json = {
        "class": cut.name,
        "algorithm": algorithm,
        "repetition": repetition,
        "seed": seed,
        "evaluations": suite.evaluations,
        "phase_evaluations": suite.phase_evaluations,
        "phase_targets": {k: sorted(v) for k, v in suite.phase_targets.items()},
        "covered": sorted(suite.covered),
        "uncovered": sorted(suite.uncovered),
        "tests": [
            {
                "phase": t.phase_label,
                "statements": [statement_to_json(s) for s in t.statements],
                "assertions": [
                    {"index": x.index, "kind": x.kind, "expected": x.expected} for x in a
                ],
                "production_calls": t.production_calls(cut),
            }
            for t, a in zip(tests, assertions)
        ],
        "intra_method_tests": sum(1 for t in tests if t.phase_label == INTRA_METHOD),
    }
    cell.kill_csv = kills.to_csv()
    return cell


def format_value(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def rows_to_csv(rows: Sequence[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for cls, algo, rep, metric, value in rows:
        writer.writerow([cls, algo, rep, metric, format_value(value)])
    return buf.getvalue()


def read_rows(path: Path) -> list[tuple]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise ConfigError(f"{path}: unexpected header {header}")
        return [(c, a, int(r), m, float(v)) for c, a, r, m, v in reader]


def _cell_job(args):
    return run_cell(*args)


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run every cell in (class, algorithm, repetition) order and write the outputs."""
    corpus = load_corpus(config.corpus)
    jobs = [
        (source, algo, rep, config)
        for _, source in corpus
        for algo in config.algorithms
        for rep in range(config.repetitions)
    ]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            cells = list(pool.map(_cell_job, jobs))
    else:
        cells = [_cell_job(j) for j in jobs]
    rows: list[tuple] = []
    failures: list[tuple] = []
    for cell in cells:
        if cell.error is not None:
            failures.append((cell.class_name, cell.algorithm, cell.repetition, cell.error))
            continue
        for metric in config.metrics:
            rows.append((cell.class_name, cell.algorithm, cell.repetition, metric, cell.metrics[metric]))
    classes = []
    for cell in cells:
        if cell.class_name not in classes:
            classes.append(cell.class_name)
    summary = summary_markdown(rows, failures, classes, config.algorithms, config.metrics, _header(config))
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "results.csv").write_text(rows_to_csv(rows))
    (out / "failures.csv").write_text(_failures_csv(failures))
    (out / "summary.md").write_text(summary)
    meta = {
        "header": _header(config),
        "classes": classes,
        "algorithms": list(config.algorithms),
        "metrics": list(config.metrics),
    }
    (out / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    if config.write_suites:
        for cell in cells:
            if cell.error is not None:
                continue
            run_dir = out / "runs" / f"rep{cell.repetition:03d}"
            run_dir.mkdir(parents=True, exist_ok=True)
            stem = f"{cell.class_name}.{cell.algorithm}"
            (run_dir / f"{stem}.tests.txt").write_text(cell.tests_text)
            (run_dir / f"{stem}.suite.json").write_text(json.dumps(cell.suite_json, indent=2, sort_keys=True) + "\n")
            (run_dir / f"{stem}.kill.csv").write_text(cell.kill_csv)
    return ExperimentReport(rows, failures, summary, classes, cells)


def _failures_csv(failures: Sequence[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("class", "algorithm", "repetition", "error"))
    writer.writerows(failures)
    return buf.getvalue()


def read_failures(path: Path) -> list[tuple]:
    if not Path(path).exists():
        return []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        next(reader, None)
        return [(c, a, int(r), e) for c, a, r, e in reader]


def _header(config: ExperimentConfig) -> dict:
    return {
        "repetitions": config.repetitions,
        "budget_evaluations": config.budget_evaluations,
        "population_size": config.population_size,
        "master_seed": config.master_seed,
    }


def summary_from_directory(directory: Path) -> str:
    """Rebuild the Markdown summary from a finished experiment's outputs."""
    directory = Path(directory)
    results = directory / "results.csv"
    if not results.exists():
        raise ConfigError(f"{results} not found")
    rows = read_rows(results)
    failures = read_failures(directory / "failures.csv")
    meta_path = directory / "meta.json"
    if meta_path.exists():
        meta = json.loads(meta_path.read_text())
    else:
        meta = {"header": {}, "classes": [], "algorithms": [], "metrics": []}
        for c, a, _, m, _ in rows:
            for key, value in (("classes", c), ("algorithms", a), ("metrics", m)):
                if value not in meta[key]:
                    meta[key].append(value)
    return summary_markdown(
        rows, failures, meta["classes"], meta["algorithms"], meta["metrics"], meta["header"]
    )
