"""Experiment orchestration, statistics, reporting and the command line."""

from gmosa.harness.experiment import (
    ALGORITHMS,
    METRICS,
    ConfigError,
    CorpusError,
    ExperimentConfig,
    ExperimentReport,
    run_experiment,
)
from gmosa.harness.seeds import mix_seed
from gmosa.harness.stats import StatResult, compare, vargha_delaney_a12, wilcoxon_rank_sum

__all__ = [
    "ALGORITHMS",
    "METRICS",
    "ConfigError",
    "CorpusError",
    "ExperimentConfig",
    "ExperimentReport",
    "StatResult",
    "compare",
    "mix_seed",
    "run_experiment",
    "vargha_delaney_a12",
    "wilcoxon_rank_sum",
]
