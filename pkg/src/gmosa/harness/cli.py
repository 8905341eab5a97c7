"""Command-line interface.

Exit status: 0 on success, 1 on usage errors, 2 on corpus or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from gmosa.analysis import generate_mutants
from gmosa.genome.render import render, statement_to_json
from gmosa.genome.testcase import INTRA_METHOD
from gmosa.harness.experiment import (
    ConfigError,
    CorpusError,
    ExperimentConfig,
    run_experiment,
    summary_from_directory,
)
from gmosa.minilang import MiniLangError, parse_class
from gmosa.runtime.assertions import capture_assertions
from gmosa.search import SearchConfig, g_mosa, generate_tests, mosa, random_baseline
from gmosa.search.engine import UntestableClassError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CORPUS = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    try:
        return parse_class(p.read_text())
    except MiniLangError as exc:
        raise CorpusError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from exc


def cmd_parse(args) -> int:
    cut = _load(args.file)
    print(f"class {cut.name}")
    print(f"members: {', '.join(m.key for m in cut.members)}")
    print(f"setters: {{{', '.join(sorted(cut.setters))}}}")
    print(f"accessors: {{{', '.join(sorted(cut.accessors))}}}")
    print(f"targets: {len(cut.targets)}")
    for t in cut.targets:
        print(f"  t{t.id} {t.describe()}")
    for w in cut.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_generate(args) -> int:
    cut = _load(args.cls)
    config = SearchConfig(
        population_size=args.population,
        total_budget=args.budget,
        seed=args.seed,
        time_budget=args.seconds,
    )
    rng = random.Random(args.seed)
    if args.intra_only:
        suite, _ = generate_tests(cut, {t.id for t in cut.targets}, args.budget, INTRA_METHOD, config, rng)
    else:
        algo = {"gmosa": g_mosa, "mosa": mosa, "random": random_baseline}[args.algo]
        suite = algo(cut, config, rng)
    assertions = [capture_assertions(cut, t) for t in suite.tests]
    text = "".join(render(t, a, cut, i) for i, (t, a) in enumerate(zip(suite.tests, assertions)))
    print(text, end="")
    print(
        f"// covered {len(suite.covered)}/{len(suite.targets)} targets"
        f" with {suite.evaluations} evaluations",
    )
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"{cut.name}.{'intra' if args.intra_only else args.algo}"
        (out / f"{stem}.tests.txt").write_text(text)
        data = {
            "class": cut.name,
            "covered": sorted(suite.covered),
            "uncovered": sorted(suite.uncovered),
            "evaluations": suite.evaluations,
            "tests": [
                {
                    "phase": t.phase_label,
                    "statements": [statement_to_json(s) for s in t.statements],
                    "assertions": [{"index": x.index, "kind": x.kind, "expected": x.expected} for x in a],
                }
                for t, a in zip(suite.tests, assertions)
            ],
        }
        (out / f"{stem}.suite.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_mutants(args) -> int:
    cut = _load(args.file)
    mutants = generate_mutants(cut)
    for m in mutants:
        print(m.describe())
    print(f"{len(mutants)} mutants")
    return EXIT_OK


def cmd_experiment(args) -> int:
    path = Path(args.config)
    if not path.is_file():
        raise UsageError(f"no such file: {args.config}")
    try:
        config = ExperimentConfig.from_json(path)
    except (ConfigError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad config {args.config}: {exc}") from exc
    if args.jobs is not None:
        config = ExperimentConfig(**{**config.__dict__, "jobs": args.jobs})
    report = run_experiment(config)
    print(f"wrote {len(report.rows)} rows to {Path(config.output_dir) / 'results.csv'}")
    if report.failures:
        print(f"{len(report.failures)} failed cell(s); see summary.md", file=sys.stderr)
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        print(summary_from_directory(Path(args.indir)), end="")
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gmosa", description="Two-phase search-based unit test generation.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("parse", help="show targets, setters and accessors of a class")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("generate", help="generate a test suite for one class")
    p.add_argument("--class", dest="cls", required=True, metavar="FILE")
    p.add_argument("--algo", choices=("gmosa", "mosa", "random"), default="gmosa")
    p.add_argument("--budget", type=int, default=20_000, help="fitness evaluations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--population", type=int, default=50)
    p.add_argument("--seconds", type=float, default=None, help="wall-clock budget instead of evaluations")
    p.add_argument("--intra-only", action="store_true", help="run only the intra-method phase")
    p.add_argument("--output", default=None, help="directory for .tests.txt and .suite.json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("mutants", help="list the mutants of a class")
    p.add_argument("file")
    p.set_defaults(func=cmd_mutants)

    p = sub.add_parser("experiment", help="run an experiment described by a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("report", help="print the summary of a finished experiment")
    p.add_argument("--in", dest="indir", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"gmosa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, UntestableClassError) as exc:
        print(f"gmosa: error: {exc}", file=sys.stderr)
        return EXIT_CORPUS


if __name__ == "__main__":
    sys.exit(main())
