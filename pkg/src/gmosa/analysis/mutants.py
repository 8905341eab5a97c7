"""First-order mutants of a checked class."""

from __future__ import annotations

from dataclasses import dataclass

from gmosa.minilang.checker import check_members
from gmosa.minilang.cut import build_cut
from gmosa.minilang.nodes import (
    Binary,
    If,
    IntLit,
    Unary,
    While,
    node_at,
    replace_at,
    walk,
)
from gmosa.minilang.parser import INT_MAX, INT_MIN
from gmosa.minilang.render import render_expr

ROR = "ROR"
AOR = "AOR"
LCR = "LCR"
COND_NEG = "COND-NEG"
CONST = "CONST"
OPERATORS = (ROR, AOR, LCR, COND_NEG, CONST)

# Each relational operator maps to its two neighbours on the number line.
ROR_TABLE = {
    "<": ("<=", "!="),
    "<=": ("<", "=="),
    ">": (">=", "!="),
    ">=": (">", "=="),
    "==": ("<=", ">="),
    "!=": ("<", ">"),
}
EQUALITY_SWAP = {"==": ("!=",), "!=": ("==",)}
AOR_TABLE = {"+": "-", "-": "+", "*": "/", "/": "*", "%": "*"}
LCR_TABLE = {"&&": "||", "||": "&&"}


@dataclass(frozen=True)
class Mutant:
    id: int
    operator: str
    member: str
    path: tuple
    original: str
    replacement: str
    node: object

    @property
    def key(self) -> str:
        return f"m{self.id}"

    @property
    def location(self) -> tuple:
        return (self.member, self.path)

    def describe(self) -> str:
        return f"{self.key} {self.operator} in {self.member}: {self.original} -> {self.replacement}"

    def apply(self, cut):
        """The class with this mutant's single node replaced, re-checked."""
        members = []
        for m in cut.members:
            if m.key == self.member:
                m = replace_at(m, self.path, self.node)
            members.append(m)
        checked = check_members(cut.name, cut.fields, tuple(members))
        return build_cut(cut.name, cut.fields, checked)


def _condition_paths(member) -> set:
    paths = set()
    for path, node in walk(member):
        if isinstance(node, (If, While)):
            paths.add(path + (("cond", None),))
    return paths


def _replacements(node, is_condition: bool):
    """``(operator, new node)`` pairs for one expression node, in table order."""
    if isinstance(node, Binary):
        op = node.op
        if op in ROR_TABLE:
            numeric = node.left.ty == "int"
            for new in (ROR_TABLE if numeric else EQUALITY_SWAP).get(op, ()):
                yield ROR, Binary(new, node.left, node.right, pos=node.pos)
        elif op in AOR_TABLE and node.ty == "int":
            yield AOR, Binary(AOR_TABLE[op], node.left, node.right, pos=node.pos)
        elif op in LCR_TABLE:
            yield LCR, Binary(LCR_TABLE[op], node.left, node.right, pos=node.pos)
    if is_condition:
        yield COND_NEG, Unary("!", node, pos=node.pos)
    if isinstance(node, IntLit):
        seen = {node.value}
        for value in (node.value + 1, node.value - 1, 0):
            if value not in seen and INT_MIN <= value <= INT_MAX:
                seen.add(value)
                yield CONST, IntLit(value, pos=node.pos)


def generate_mutants(cut) -> list[Mutant]:
    """All first-order mutants in source order: members, then pre-order nodes."""
    out: list[Mutant] = []
    seen = set()
    for member in cut.members:
        conditions = _condition_paths(member)
        for path, node in walk(member):
            for operator, new in _replacements(node, path in conditions):
                original = render_expr(node)
                replacement = render_expr(new)
                key = (member.key, path, replacement)
                if key in seen:
                    continue
                seen.add(key)
                out.append(Mutant(len(out), operator, member.key, path, original, replacement, new))
    return out


def fragment_at(cut, mutant: Mutant) -> str:
    member = next(m for m in cut.members if m.key == mutant.member)
    return render_expr(node_at(member, mutant.path))
