"""Class-under-test model: targets, predicates, setters and control dependence."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Optional

from gmosa.minilang.checker import check_members
from gmosa.minilang.nodes import (
    LOGICAL_OPS,
    RELATIONAL_OPS,
    Binary,
    Constructor,
    Expr,
    FieldDecl,
    If,
    Method,
    Stmt,
    Unary,
    While,
)
from gmosa.minilang.parser import parse_syntax

logger = logging.getLogger(__name__)

SETTER_KEYWORDS = ("set", "put")
ACCESSOR_KEYWORD = "get"


@dataclass(frozen=True)
class PredicateSite:
    id: int
    method: str  # member key of the enclosing constructor or method
    comparison: str  # relational operator, "&&", "||", "!" or "boolean"
    control_parent: Optional[tuple[int, bool]]
    depth: int


@dataclass(frozen=True)
class BranchTarget:
    id: int
    kind: str  # "entry" or "branch"
    member: str
    predicate: Optional[int] = None
    outcome: Optional[bool] = None

    @property
    def is_entry(self) -> bool:
        return self.kind == "entry"

    def describe(self) -> str:
        if self.is_entry:
            return f"entry {self.member}"
        return f"p{self.predicate}:{'true' if self.outcome else 'false'} in {self.member}"


@dataclass(frozen=True)
class CutClass:
    name: str
    fields: tuple[FieldDecl, ...]
    members: tuple  # Constructor | Method in declaration order
    predicates: tuple[PredicateSite, ...]
    setters: frozenset[str]
    accessors: frozenset[str]
    targets: tuple[BranchTarget, ...]
    warnings: tuple[str, ...] = ()
    # Compiled programs and other derived artefacts; never part of equality.
    cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def constructors(self) -> tuple[Constructor, ...]:
        ctors = self.cache.get("constructors")
        if ctors is None:
            ctors = self.cache["constructors"] = tuple(
                m for m in self.members if isinstance(m, Constructor)
            )
        return ctors

    @property
    def methods(self) -> tuple[Method, ...]:
        methods = self.cache.get("methods")
        if methods is None:
            methods = self.cache["methods"] = tuple(m for m in self.members if isinstance(m, Method))
        return methods

    def method(self, name: str) -> Method:
        index = self.cache.get("method-index")
        if index is None:
            index = self.cache["method-index"] = {m.name: m for m in self.methods}
        return index[name]

    def field_type(self, name: str) -> str:
        index = self.cache.get("field-index")
        if index is None:
            index = self.cache["field-index"] = {f.name: f.type for f in self.fields}
        return index[name]

    @property
    def production_methods(self) -> tuple[Method, ...]:
        """Methods that count as the unit under test (neither setter nor accessor)."""
        return tuple(
            m for m in self.methods if m.name not in self.setters and m.name not in self.accessors
        )

    def is_production(self, method_name: str) -> bool:
        return method_name not in self.setters and method_name not in self.accessors


def parse_class(source: str) -> CutClass:
    """Parse and type-check one MiniLang class."""
    syntax = parse_syntax(source)
    members = check_members(syntax.name, syntax.fields, syntax.members)
    return build_cut(syntax.name, syntax.fields, members)


def build_cut(name: str, fields: tuple[FieldDecl, ...], members: tuple) -> CutClass:
    predicates = _collect_predicates(members)
    method_names = [m.name for m in members if isinstance(m, Method)]
    setters = detect_setters_from_names(method_names)
    accessors = detect_accessors_from_names(method_names) - setters
    warnings: tuple[str, ...] = ()
    if not members:
        warnings = (f"class {name} has no constructors or methods; it is untestable",)
        logger.warning(warnings[0])
    elif not any(isinstance(m, Constructor) for m in members):
        warnings = (f"class {name} declares no constructor; it is untestable",)
        logger.warning(warnings[0])
    cut = CutClass(
        name=name,
        fields=fields,
        members=members,
        predicates=predicates,
        setters=setters,
        accessors=accessors,
        targets=(),
        warnings=warnings,
    )
    object.__setattr__(cut, "targets", enumerate_targets(cut))
    return cut


def enumerate_targets(cut: CutClass) -> tuple[BranchTarget, ...]:
    targets: list[BranchTarget] = []
    for m in cut.members:
        targets.append(BranchTarget(len(targets), "entry", m.key))
    for p in cut.predicates:
        for outcome in (True, False):
            targets.append(BranchTarget(len(targets), "branch", p.method, p.id, outcome))
    return tuple(targets)


def control_parent_chain(cut: CutClass, target: BranchTarget) -> tuple[tuple[int, bool], ...]:
    """Control dependencies of ``target``, outermost first."""
    if target.is_entry:
        return ()
    chain: list[tuple[int, bool]] = []
    parent = cut.predicates[target.predicate].control_parent
    while parent is not None:
        chain.append(parent)
        parent = cut.predicates[parent[0]].control_parent
    chain.reverse()
    return tuple(chain)


# setter heuristic


def _keyword_splits(name: str, keywords: tuple[str, ...]) -> list[tuple[str, str, str]]:
    """All ``(prefix, keyword, suffix)`` decompositions of a camel-case name.

    The keyword is lowercase at the start of the name and capitalised after a
    non-empty prefix; a non-empty suffix must start with an uppercase letter
    or a digit.
    """
    splits = []
    for kw in keywords:
        for m in re.finditer(kw.capitalize() + "|" + kw, name):
            start, end = m.span()
            word = m.group()
            if (start == 0) != word.islower():
                continue
            suffix = name[end:]
            if suffix and not (suffix[0].isupper() or suffix[0].isdigit()):
                continue
            splits.append((name[:start], kw, suffix))
    return splits


def _getter_name(prefix: str, suffix: str) -> str:
    return prefix + ("Get" if prefix else "get") + suffix


def detect_setters_from_names(names) -> frozenset[str]:
    names = set(names)
    found = set()
    for name in names:
        for prefix, _, suffix in _keyword_splits(name, SETTER_KEYWORDS):
            if _getter_name(prefix, suffix) in names:
                found.add(name)
    return frozenset(found)


def detect_accessors_from_names(names) -> frozenset[str]:
    return frozenset(n for n in names if _keyword_splits(n, (ACCESSOR_KEYWORD,)))


def detect_setters(cut: CutClass) -> frozenset[str]:
    return detect_setters_from_names(m.name for m in cut.methods)


# predicates


def comparison_kind(cond: Expr) -> str:
    if isinstance(cond, Binary) and (cond.op in RELATIONAL_OPS or cond.op in LOGICAL_OPS):
        return cond.op
    if isinstance(cond, Unary) and cond.op == "!":
        return "!"
    return "boolean"


def _collect_predicates(members: tuple) -> tuple[PredicateSite, ...]:
    sites: dict[int, PredicateSite] = {}

    def visit(stmts: tuple[Stmt, ...], key: str, parent, depth: int) -> None:
        for s in stmts:
            if isinstance(s, If):
                sites[s.pid] = PredicateSite(s.pid, key, comparison_kind(s.cond), parent, depth)
                visit(s.then, key, (s.pid, True), depth + 1)
                if s.orelse is not None:
                    visit(s.orelse, key, (s.pid, False), depth + 1)
            elif isinstance(s, While):
                sites[s.pid] = PredicateSite(s.pid, key, comparison_kind(s.cond), parent, depth)
                visit(s.body, key, (s.pid, True), depth + 1)

    for m in members:
        visit(m.body, m.key, None, 0)
    return tuple(sites[i] for i in sorted(sites))
