"""Markdown summary of experiment rows."""

from __future__ import annotations

import statistics
from typing import Sequence

from gmosa.harness.stats import ALPHA, compare

FIRST, SECOND = "mosa", "gmosa"
# Hypothesis labels for the six compared metrics.
HYPOTHESES = {
    "branch_coverage": "H1 coverage",
    "mutation_score": "H2 mutation score",
    "mean_test_loc": "H3 size per test",
    "twmc": "H4 TWMC",
    "efferent_coupling": "H5 EC",
    "smell_count": "H6 smells",
}
_ARROW = {"first-better": "mosa larger", "second-better": "gmosa larger", "identical": "="}


def _fmt(x: float) -> str:
    return f"{x:.4g}"


def samples(rows: Sequence[tuple], cls: str, algo: str, metric: str) -> list[float]:
    return [float(v) for c, a, _, m, v in rows if c == cls and a == algo and m == metric]


def summary_markdown(
    rows: Sequence[tuple],
    failures: Sequence[tuple],
    classes: Sequence[str],
    algorithms: Sequence[str],
    metrics: Sequence[str],
    header: dict,
) -> str:
    lines = ["# Experiment summary", ""]
    for key in sorted(header):
        lines.append(f"- {key}: {header[key]}")
    lines.append(f"- significance level: {ALPHA}")
    lines.append("")
    lines.append("## Medians")
    lines.append("")
    lines.append("| class | metric | " + " | ".join(algorithms) + " |")
    lines.append("|---|---|" + "---|" * len(algorithms))
    for cls in classes:
        for metric in metrics:
            meds = []
            for algo in algorithms:
                xs = samples(rows, cls, algo, metric)
                meds.append(_fmt(statistics.median(xs)) if xs else "n/a")
            lines.append(f"| {cls} | {metric} | " + " | ".join(meds) + " |")
    lines.append("")
    if FIRST in algorithms and SECOND in algorithms:
        lines.append("## Statistics")
        lines.append("")
        lines.append(
            "Sample order is (mosa, gmosa): A12 < 0.5 means gmosa values tend to be larger. "
            f"Wilcoxon rank-sum, two-sided; `reject` marks p < {ALPHA}."
        )
        lines.append("")
        lines.append("| class | hypothesis | metric | n mosa | n gmosa | median mosa | median gmosa | p | A12 | direction | reject |")
        lines.append("|---|---|---|---|---|---|---|---|---|---|---|")
        for cls in classes:
            for metric in metrics:
                if metric not in HYPOTHESES:
                    continue
                xs = samples(rows, cls, FIRST, metric)
                ys = samples(rows, cls, SECOND, metric)
                if not xs or not ys:
                    lines.append(f"| {cls} | {HYPOTHESES[metric]} | {metric} | {len(xs)} | {len(ys)} | n/a | n/a | n/a | n/a | n/a | n/a |")
                    continue
                r = compare(xs, ys)
                lines.append(
                    f"| {cls} | {HYPOTHESES[metric]} | {metric} | {len(xs)} | {len(ys)} | "
                    f"{_fmt(statistics.median(xs))} | {_fmt(statistics.median(ys))} | "
                    f"{r.p_value:.4g} | {r.a12:.4f} | {_ARROW[r.direction]} | {'yes' if r.significant else 'no'} |"
                )
        lines.append("")
    lines.append("## Failures")
    lines.append("")
    if failures:
        lines.append(f"{len(failures)} cell(s) failed and are excluded from the statistics.")
        lines.append("")
        for cls, algo, rep, err in failures:
            lines.append(f"- {cls} / {algo} / repetition {rep}: {err}")
    else:
        lines.append("None.")
    lines.append("")
    return "\n".join(lines)
