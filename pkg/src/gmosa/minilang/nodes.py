"""Immutable syntax tree for MiniLang.

Positions and checker annotations (``ty``, ``is_field``) are excluded from
equality, so two trees compare equal exactly when they are structurally
identical.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

Pos = tuple[int, int]

RELATIONAL_OPS = ("==", "!=", "<", "<=", ">", ">=")
ARITHMETIC_OPS = ("+", "-", "*", "/", "%")
LOGICAL_OPS = ("&&", "||")
PRIMITIVE_TYPES = ("int", "bool", "string")


@dataclass(frozen=True)
class Node:
    pos: Pos = field(default=(0, 0), compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Expr(Node):
    ty: Optional[str] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class StrLit(Expr):
    value: str


@dataclass(frozen=True)
class Name(Expr):
    ident: str
    is_field: bool = field(default=False, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # "!" or "-"
    operand: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class Stmt(Node):
    pass


@dataclass(frozen=True)
class VarDecl(Stmt):
    type: str
    name: str
    init: Optional[Expr]


@dataclass(frozen=True)
class Assign(Stmt):
    name: str
    value: Expr
    is_field: bool = field(default=False, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class If(Stmt):
    pid: int
    cond: Expr
    then: tuple[Stmt, ...]
    orelse: Optional[tuple[Stmt, ...]]


@dataclass(frozen=True)
class While(Stmt):
    pid: int
    cond: Expr
    body: tuple[Stmt, ...]


@dataclass(frozen=True)
class Return(Stmt):
    value: Optional[Expr]


@dataclass(frozen=True)
class ExprStmt(Stmt):
    expr: Expr


@dataclass(frozen=True)
class Param(Node):
    type: str
    name: str


@dataclass(frozen=True)
class FieldDecl(Node):
    type: str
    name: str


@dataclass(frozen=True)
class Constructor(Node):
    index: int
    params: tuple[Param, ...]
    body: tuple[Stmt, ...]

    @property
    def key(self) -> str:
        return f"new#{self.index}"

    @property
    def param_types(self) -> tuple[str, ...]:
        return tuple(p.type for p in self.params)


@dataclass(frozen=True)
class Method(Node):
    name: str
    params: tuple[Param, ...]
    return_type: str
    body: tuple[Stmt, ...]

    @property
    def key(self) -> str:
        return self.name

    @property
    def param_types(self) -> tuple[str, ...]:
        return tuple(p.type for p in self.params)


Member = Union[Constructor, Method]

# A path addresses a node below a member: each step is (field name, tuple index or None).
PathStep = tuple[str, Optional[int]]
Path = tuple[PathStep, ...]


def children(node: Node) -> Iterator[tuple[PathStep, Node]]:
    for f in dataclasses.fields(node):
        if not f.compare:
            continue
        value = getattr(node, f.name)
        if isinstance(value, Node):
            yield (f.name, None), value
        elif isinstance(value, tuple):
            for i, item in enumerate(value):
                if isinstance(item, Node):
                    yield (f.name, i), item


def walk(node: Node, path: Path = ()) -> Iterator[tuple[Path, Node]]:
    """Pre-order traversal yielding ``(path, node)`` pairs."""
    yield path, node
    for step, child in children(node):
        yield from walk(child, path + (step,))


def node_at(node: Node, path: Path) -> Node:
    for name, index in path:
        value = getattr(node, name)
        node = value if index is None else value[index]
    return node


def replace_at(node: Node, path: Path, new: Node) -> Node:
    if not path:
        return new
    (name, index), rest = path[0], path[1:]
    value = getattr(node, name)
    if index is None:
        return dataclasses.replace(node, **{name: replace_at(value, rest, new)})
    items = list(value)
    items[index] = replace_at(items[index], rest, new)
    return dataclasses.replace(node, **{name: tuple(items)})
