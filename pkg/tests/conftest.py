from __future__ import annotations

import pytest

from gmosa import CORPUS_DIR
from gmosa.genome.testcase import ConstructorCall, MethodCall, Primitive, TestCase
from gmosa.minilang import parse_class


def load(name: str):
    return parse_class((CORPUS_DIR / f"{name}.mini").read_text())


@pytest.fixture(scope="session")
def corpus():
    return {f.stem: parse_class(f.read_text()) for f in sorted(CORPUS_DIR.glob("*.mini"))}


@pytest.fixture(scope="session")
def counter():
    return load("Counter")


def counter_bump(start: int, by: int) -> TestCase:
    return TestCase(
        [
            Primitive("int", start),
            ConstructorCall(0, (0,)),
            Primitive("int", by),
            MethodCall(1, "bump", (2,)),
        ]
    )


def counter_set_get(start: int, v: int) -> TestCase:
    return TestCase(
        [
            Primitive("int", start),
            ConstructorCall(0, (0,)),
            Primitive("int", v),
            MethodCall(1, "setValue", (2,)),
            MethodCall(1, "getValue", ()),
        ]
    )
