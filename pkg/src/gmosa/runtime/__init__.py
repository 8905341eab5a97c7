"""Instrumented execution of tests against a class or one of its mutants."""

from gmosa.runtime.assertions import Assertion, AssertionSet, capture_assertions
from gmosa.runtime.distance import branch_distance, levenshtein, normalize
from gmosa.runtime.fitness import FitnessVector, fitness
from gmosa.runtime.interpreter import (
    DEFAULT_STEP_BUDGET,
    ExecutionTrace,
    MalformedTestError,
    execute,
)

__all__ = [
    "Assertion",
    "AssertionSet",
    "DEFAULT_STEP_BUDGET",
    "ExecutionTrace",
    "FitnessVector",
    "MalformedTestError",
    "branch_distance",
    "capture_assertions",
    "execute",
    "fitness",
    "levenshtein",
    "normalize",
]
