"""Many-objective search: archive, preference sorting, MOSA and G-MOSA."""

from gmosa.search.archive import Archive
from gmosa.search.engine import (
    Evaluator,
    SearchConfig,
    Suite,
    UntestableClassError,
    g_mosa,
    generate_tests,
    mosa,
    random_baseline,
)
from gmosa.search.sorting import non_dominated_fronts, preference_sort

__all__ = [
    "Archive",
    "Evaluator",
    "SearchConfig",
    "Suite",
    "UntestableClassError",
    "g_mosa",
    "generate_tests",
    "mosa",
    "non_dominated_fronts",
    "preference_sort",
    "random_baseline",
]
