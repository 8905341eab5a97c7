"""Canonical source rendering for checked or unchecked trees."""

from __future__ import annotations

from gmosa.minilang.lexer import escape
from gmosa.minilang.nodes import (
    Assign,
    Binary,
    BoolLit,
    Call,
    Constructor,
    Expr,
    ExprStmt,
    If,
    IntLit,
    Name,
    Return,
    Stmt,
    StrLit,
    Unary,
    VarDecl,
    While,
)

_PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "==": 3,
    "!=": 3,
    "<": 4,
    "<=": 4,
    ">": 4,
    ">=": 4,
    "+": 5,
    "-": 5,
    "*": 6,
    "/": 6,
    "%": 6,
}
_UNARY = 7
_INDENT = "    "


def render_expr(e: Expr, parent: int = 0) -> str:
    if isinstance(e, IntLit):
        text = str(e.value)
        # A negative literal binds like a unary minus.
        return f"({text})" if e.value < 0 and parent >= _UNARY else text
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, StrLit):
        return f'"{escape(e.value)}"'
    if isinstance(e, Name):
        return e.ident
    if isinstance(e, Call):
        return f"{e.name}({', '.join(render_expr(a) for a in e.args)})"
    if isinstance(e, Unary):
        inner = render_expr(e.operand, _UNARY)
        if e.op == "-" and isinstance(e.operand, IntLit) and e.operand.value >= 0:
            # "-5" would re-parse as a literal, not a unary minus.
            inner = f"({inner})"
        return e.op + inner
    if isinstance(e, Binary):
        prec = _PRECEDENCE[e.op]
        # Operators are left-associative: the right operand needs strictly tighter binding.
        text = f"{render_expr(e.left, prec)} {e.op} {render_expr(e.right, prec + 1)}"
        return f"({text})" if prec < parent else text
    raise TypeError(f"unknown expression {e!r}")


def _block(stmts, depth: int) -> list[str]:
    lines = []
    for s in stmts:
        lines.extend(_stmt(s, depth))
    return lines


def _stmt(s: Stmt, depth: int) -> list[str]:
    pad = _INDENT * depth
    if isinstance(s, VarDecl):
        init = "" if s.init is None else f" = {render_expr(s.init)}"
        return [f"{pad}{s.type} {s.name}{init};"]
    if isinstance(s, Assign):
        return [f"{pad}{s.name} = {render_expr(s.value)};"]
    if isinstance(s, Return):
        return [f"{pad}return;" if s.value is None else f"{pad}return {render_expr(s.value)};"]
    if isinstance(s, ExprStmt):
        return [f"{pad}{render_expr(s.expr)};"]
    if isinstance(s, While):
        return [
            f"{pad}while ({render_expr(s.cond)}) {{",
            *_block(s.body, depth + 1),
            f"{pad}}}",
        ]
    if isinstance(s, If):
        lines = [f"{pad}if ({render_expr(s.cond)}) {{", *_block(s.then, depth + 1)]
        node = s
        while node.orelse is not None:
            if len(node.orelse) == 1 and isinstance(node.orelse[0], If):
                node = node.orelse[0]
                lines.append(f"{pad}}} else if ({render_expr(node.cond)}) {{")
                lines.extend(_block(node.then, depth + 1))
            else:
                lines.append(f"{pad}}} else {{")
                lines.extend(_block(node.orelse, depth + 1))
                break
        lines.append(f"{pad}}}")
        return lines
    raise TypeError(f"unknown statement {s!r}")


def render_class(cut) -> str:
    """Render a class back to canonical MiniLang source."""
    lines = [f"class {cut.name} {{"]
    for f in cut.fields:
        lines.append(f"{_INDENT}{f.type} {f.name};")
    for m in cut.members:
        params = ", ".join(f"{p.type} {p.name}" for p in m.params)
        lines.append("")
        if isinstance(m, Constructor):
            lines.append(f"{_INDENT}{cut.name}({params}) {{")
        else:
            lines.append(f"{_INDENT}{m.return_type} {m.name}({params}) {{")
        lines.extend(_block(m.body, 2))
        lines.append(f"{_INDENT}}}")
    lines.append("}")
    return "\n".join(lines) + "\n"
