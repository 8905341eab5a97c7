"""Mutation analysis and suite quality metrics."""

from gmosa.analysis.metrics import (
    SMELLS,
    SuiteMetrics,
    branch_coverage,
    cyclomatic_complexity,
    referenced_members,
    suite_metrics,
)
from gmosa.analysis.mutants import OPERATORS, Mutant, generate_mutants
from gmosa.analysis.scoring import MutationResult, kills, mutation_score

__all__ = [
    "OPERATORS",
    "SMELLS",
    "Mutant",
    "MutationResult",
    "SuiteMetrics",
    "branch_coverage",
    "cyclomatic_complexity",
    "generate_mutants",
    "kills",
    "mutation_score",
    "referenced_members",
    "suite_metrics",
]
