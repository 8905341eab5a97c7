"""Human-readable and JSON forms of generated tests."""

from __future__ import annotations

from typing import Optional

from gmosa.genome.testcase import (
    Assignment,
    ConstructorCall,
    FieldRead,
    FieldWrite,
    MethodCall,
    Primitive,
    TestCase,
    declared_type,
)
from gmosa.minilang.lexer import escape
from gmosa.runtime.assertions import ERROR, AssertionSet

_INDENT = "    "


def literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return f'"{escape(value)}"'
    return str(value)


def _var(i: int) -> str:
    return f"v{i}"


def render_statement(stmt, index: int, cut) -> str:
    if isinstance(stmt, Primitive):
        return f"{stmt.type} {_var(index)} = {literal(stmt.value)};"
    if isinstance(stmt, ConstructorCall):
        args = ", ".join(_var(a) for a in stmt.args)
        return f"{cut.name} {_var(index)} = new {cut.name}({args});"
    if isinstance(stmt, MethodCall):
        call = f"{_var(stmt.receiver)}.{stmt.method}({', '.join(_var(a) for a in stmt.args)})"
        ty = declared_type(stmt, cut)
        return f"{call};" if ty is None else f"{ty} {_var(index)} = {call};"
    if isinstance(stmt, FieldWrite):
        return f"{_var(stmt.receiver)}.{stmt.field} = {_var(stmt.source)};"
    if isinstance(stmt, FieldRead):
        return f"{cut.field_type(stmt.field)} {_var(index)} = {_var(stmt.receiver)}.{stmt.field};"
    if isinstance(stmt, Assignment):
        return f"{_var(stmt.target)} = {_var(stmt.source)};"
    raise TypeError(f"unknown statement {stmt!r}")


def render_lines(test: TestCase, assertions: Optional[AssertionSet], cut) -> list[str]:
    """Body lines of one test; their count is the test's LOC."""
    by_index: dict[int, list] = {}
    for a in assertions or ():
        by_index.setdefault(a.index, []).append(a)
    lines = []
    for i, stmt in enumerate(test.statements):
        lines.append(render_statement(stmt, i, cut))
        for a in by_index.get(i, ()):
            if a.kind == ERROR:
                lines.append(f"assert raises {a.expected};")
            else:
                lines.append(f"assert {_var(i)} == {literal(a.expected)};")
    return lines


def render(test: TestCase, assertions: Optional[AssertionSet], cut, index: int = 0) -> str:
    lines = render_lines(test, assertions, cut)
    if not lines:
        return f"test_{index} {{ }}\n"
    body = "".join(f"{_INDENT}{line}\n" for line in lines)
    return f"test_{index} {{\n{body}}}\n"


def rendered_loc(rendered: str) -> int:
    """Lines strictly inside the braces of one rendered test."""
    lines = rendered.strip().splitlines()
    if len(lines) <= 1:
        return 0
    return sum(1 for line in lines[1:-1] if line.strip())


def statement_to_json(stmt) -> dict:
    if isinstance(stmt, Primitive):
        return {"kind": "primitive", "type": stmt.type, "value": stmt.value}
    if isinstance(stmt, ConstructorCall):
        return {"kind": "constructor", "ctor": stmt.ctor, "args": list(stmt.args)}
    if isinstance(stmt, MethodCall):
        return {
            "kind": "method",
            "receiver": stmt.receiver,
            "method": stmt.method,
            "args": list(stmt.args),
        }
    if isinstance(stmt, FieldWrite):
        return {"kind": "field-write", "receiver": stmt.receiver, "field": stmt.field, "source": stmt.source}
    if isinstance(stmt, FieldRead):
        return {"kind": "field-read", "receiver": stmt.receiver, "field": stmt.field}
    return {"kind": "assignment", "target": stmt.target, "source": stmt.source}


def statement_from_json(data: dict):
    kind = data["kind"]
    if kind == "primitive":
        return Primitive(data["type"], data["value"])
    if kind == "constructor":
        return ConstructorCall(data["ctor"], tuple(data["args"]))
    if kind == "method":
        return MethodCall(data["receiver"], data["method"], tuple(data["args"]))
    if kind == "field-write":
        return FieldWrite(data["receiver"], data["field"], data["source"])
    if kind == "field-read":
        return FieldRead(data["receiver"], data["field"])
    if kind == "assignment":
        return Assignment(data["target"], data["source"])
    raise ValueError(f"unknown statement kind {kind!r}")
