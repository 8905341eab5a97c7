"""Test-case representation.

Variables are identified by the index of the statement that declares them,
so every reference is a plain integer pointing backwards in the sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

INTRA_METHOD = "intra-method"
UNRESTRICTED = "unrestricted"
INTRA_CLASS = "intra-class"


@dataclass(frozen=True)
class Primitive:
    type: str
    value: Union[int, bool, str]

    refs = ()


@dataclass(frozen=True)
class ConstructorCall:
    ctor: int
    args: tuple[int, ...]

    @property
    def refs(self) -> tuple[int, ...]:
        return self.args


@dataclass(frozen=True)
class MethodCall:
    receiver: int
    method: str
    args: tuple[int, ...]

    @property
    def refs(self) -> tuple[int, ...]:
        return (self.receiver, *self.args)


@dataclass(frozen=True)
class FieldWrite:
    receiver: int
    field: str
    source: int

    @property
    def refs(self) -> tuple[int, ...]:
        return (self.receiver, self.source)


@dataclass(frozen=True)
class FieldRead:
    receiver: int
    field: str

    @property
    def refs(self) -> tuple[int, ...]:
        return (self.receiver,)


@dataclass(frozen=True)
class Assignment:
    target: int
    source: int

    @property
    def refs(self) -> tuple[int, ...]:
        return (self.target, self.source)


Statement = Union[Primitive, ConstructorCall, MethodCall, FieldWrite, FieldRead, Assignment]


def with_refs(stmt: Statement, refs: tuple[int, ...]) -> Statement:
    """Copy of ``stmt`` with its references replaced, in ``stmt.refs`` order."""
    if isinstance(stmt, Primitive):
        return stmt
    if isinstance(stmt, ConstructorCall):
        return ConstructorCall(stmt.ctor, tuple(refs))
    if isinstance(stmt, MethodCall):
        return MethodCall(refs[0], stmt.method, tuple(refs[1:]))
    if isinstance(stmt, FieldWrite):
        return FieldWrite(refs[0], stmt.field, refs[1])
    if isinstance(stmt, FieldRead):
        return FieldRead(refs[0], stmt.field)
    return Assignment(refs[0], refs[1])


def declared_type(stmt: Statement, cut) -> Optional[str]:
    """Type of the variable ``stmt`` declares, or None."""
    if isinstance(stmt, Primitive):
        return stmt.type
    if isinstance(stmt, ConstructorCall):
        return cut.name
    if isinstance(stmt, MethodCall):
        ty = cut.method(stmt.method).return_type
        return None if ty == "void" else ty
    if isinstance(stmt, FieldRead):
        return cut.field_type(stmt.field)
    return None


def required_types(stmt: Statement, cut, types: list) -> Optional[tuple[str, ...]]:
    """Types the references of ``stmt`` must have, in ``stmt.refs`` order.

    ``types`` holds the declared type of every earlier statement; it is only
    consulted for assignments, whose operands must share the target's type.
    """
    if isinstance(stmt, Primitive):
        return ()
    if isinstance(stmt, ConstructorCall):
        return cut.constructors[stmt.ctor].param_types
    if isinstance(stmt, MethodCall):
        return (cut.name, *cut.method(stmt.method).param_types)
    if isinstance(stmt, FieldWrite):
        return (cut.name, cut.field_type(stmt.field))
    if isinstance(stmt, FieldRead):
        return (cut.name,)
    target_ty = types[stmt.target] if 0 <= stmt.target < len(types) else None
    if target_ty is None or target_ty == cut.name:
        return None
    return (target_ty, target_ty)


def is_production_call(stmt: Statement, cut) -> bool:
    return isinstance(stmt, MethodCall) and cut.is_production(stmt.method)


@dataclass
class TestCase:
    statements: list = field(default_factory=list)
    cut_call_inserted: bool = False
    cached_fitness: Optional[object] = field(default=None, compare=False)
    phase_label: Optional[str] = None

    __test__ = False  # not a pytest class

    def __len__(self) -> int:
        return len(self.statements)

    def copy(self) -> TestCase:
        return TestCase(list(self.statements), self.cut_call_inserted, None, self.phase_label)

    def production_calls(self, cut) -> int:
        return sum(1 for s in self.statements if is_production_call(s, cut))

    def refresh_flag(self, cut) -> None:
        self.cut_call_inserted = any(is_production_call(s, cut) for s in self.statements)


@dataclass(frozen=True)
class GeneratorConfig:
    max_length: int = 40
    max_attempts: int = 1000
    insertion_uut: float = 0.5
    insertion_set: float = 0.3
    mode: str = INTRA_METHOD

    def __post_init__(self) -> None:
        if self.max_length < 1 or self.max_attempts < 1:
            raise ValueError("max_length and max_attempts must be positive")
        for p in (self.insertion_uut, self.insertion_set):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")
        if self.mode not in (INTRA_METHOD, UNRESTRICTED):
            raise ValueError(f"unknown generation mode {self.mode!r}")
