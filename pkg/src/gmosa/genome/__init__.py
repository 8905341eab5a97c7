"""Test-case genome: representation, random generation, variation and rendering."""

from gmosa.genome.generation import (
    UntestableClassError,
    insert_call_on_cut,
    insert_call_on_value,
    random_test,
)
from gmosa.genome.render import render, rendered_loc
from gmosa.genome.testcase import (
    INTRA_CLASS,
    INTRA_METHOD,
    UNRESTRICTED,
    Assignment,
    ConstructorCall,
    FieldRead,
    FieldWrite,
    GeneratorConfig,
    MethodCall,
    Primitive,
    TestCase,
)
from gmosa.genome.variation import crossover, mutate_test

__all__ = [
    "INTRA_CLASS",
    "INTRA_METHOD",
    "UNRESTRICTED",
    "Assignment",
    "ConstructorCall",
    "FieldRead",
    "FieldWrite",
    "GeneratorConfig",
    "MethodCall",
    "Primitive",
    "TestCase",
    "UntestableClassError",
    "crossover",
    "insert_call_on_cut",
    "insert_call_on_value",
    "mutate_test",
    "random_test",
    "render",
    "rendered_loc",
]
