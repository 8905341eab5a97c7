"""MiniLang front end: parsing, checking and static analysis of the class under test."""

from gmosa.minilang.cut import (
    BranchTarget,
    CutClass,
    PredicateSite,
    control_parent_chain,
    detect_setters,
    enumerate_targets,
    parse_class,
)
from gmosa.minilang.errors import (
    DuplicateMemberError,
    MiniLangError,
    MiniLangSyntaxError,
    MiniLangTypeError,
)
from gmosa.minilang.render import render_class

__all__ = [
    "BranchTarget",
    "CutClass",
    "DuplicateMemberError",
    "MiniLangError",
    "MiniLangSyntaxError",
    "MiniLangTypeError",
    "PredicateSite",
    "control_parent_chain",
    "detect_setters",
    "enumerate_targets",
    "parse_class",
    "render_class",
]
