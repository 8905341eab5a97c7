"""Static checking: name resolution and typing.

The checker returns a new tree in which every expression carries its type
(``ty``) and every name knows whether it refers to a field.
"""

from __future__ import annotations

import dataclasses

from gmosa.minilang.errors import DuplicateMemberError, MiniLangTypeError
from gmosa.minilang.nodes import (
    ARITHMETIC_OPS,
    Assign,
    Binary,
    BoolLit,
    Call,
    Constructor,
    Expr,
    ExprStmt,
    FieldDecl,
    If,
    IntLit,
    Method,
    Name,
    Node,
    Return,
    Stmt,
    StrLit,
    Unary,
    VarDecl,
    While,
)


def _err(message: str, node: Node) -> MiniLangTypeError:
    return MiniLangTypeError(message, *node.pos)


class _Scope:
    def __init__(self, parent: _Scope | None = None) -> None:
        self.parent = parent
        self.names: dict[str, str] = {}

    def lookup(self, name: str) -> str | None:
        scope = self
        while scope is not None:
            if name in scope.names:
                return scope.names[name]
            scope = scope.parent
        return None


class Checker:
    def __init__(self, class_name: str, fields: tuple[FieldDecl, ...], members: tuple) -> None:
        self.class_name = class_name
        self.fields: dict[str, str] = {}
        for f in fields:
            if f.name in self.fields:
                raise DuplicateMemberError(f"duplicate field {f.name!r}", *f.pos)
            self.fields[f.name] = f.type
        self.methods: dict[str, Method] = {}
        for m in members:
            if isinstance(m, Method):
                if m.name in self.methods:
                    raise DuplicateMemberError(f"duplicate method {m.name!r}", *m.pos)
                if m.name in self.fields:
                    raise DuplicateMemberError(f"method {m.name!r} clashes with a field", *m.pos)
                self.methods[m.name] = m
        signatures = [m.param_types for m in members if isinstance(m, Constructor)]
        if len(set(signatures)) != len(signatures):
            first = next(m for m in members if isinstance(m, Constructor))
            raise DuplicateMemberError("duplicate constructor signature", *first.pos)
        self.members = members
        self.return_type = "void"

    def check(self) -> tuple:
        return tuple(self.member(m) for m in self.members)

    def member(self, m):
        scope = _Scope()
        for p in m.params:
            if p.name in scope.names:
                raise _err(f"duplicate parameter {p.name!r}", p)
            scope.names[p.name] = p.type
        self.return_type = m.return_type if isinstance(m, Method) else "void"
        body = self.block(m.body, scope)
        if self.return_type != "void" and _completes(body):
            raise _err(f"method {m.name!r} may finish without returning a value", m)
        return dataclasses.replace(m, body=body)

    # statements

    def block(self, stmts: tuple[Stmt, ...], parent: _Scope) -> tuple[Stmt, ...]:
        scope = _Scope(parent)
        return tuple(self.statement(s, scope) for s in stmts)

    def statement(self, s: Stmt, scope: _Scope) -> Stmt:
        if isinstance(s, VarDecl):
            if scope.lookup(s.name) is not None:
                raise _err(f"variable {s.name!r} already declared", s)
            init = None
            if s.init is not None:
                init = self.expect_type(s.init, s.type, scope)
            scope.names[s.name] = s.type
            return dataclasses.replace(s, init=init)
        if isinstance(s, Assign):
            local = scope.lookup(s.name)
            target_ty = local if local is not None else self.fields.get(s.name)
            if target_ty is None:
                raise _err(f"undeclared variable {s.name!r}", s)
            value = self.expect_type(s.value, target_ty, scope)
            return dataclasses.replace(s, value=value, is_field=local is None)
        if isinstance(s, If):
            cond = self.expect_type(s.cond, "bool", scope)
            then = self.block(s.then, scope)
            orelse = None if s.orelse is None else self.block(s.orelse, scope)
            return dataclasses.replace(s, cond=cond, then=then, orelse=orelse)
        if isinstance(s, While):
            cond = self.expect_type(s.cond, "bool", scope)
            return dataclasses.replace(s, cond=cond, body=self.block(s.body, scope))
        if isinstance(s, Return):
            if s.value is None:
                if self.return_type != "void":
                    raise _err("missing return value", s)
                return s
            if self.return_type == "void":
                raise _err("void member cannot return a value", s)
            return dataclasses.replace(s, value=self.expect_type(s.value, self.return_type, scope))
        if isinstance(s, ExprStmt):
            return dataclasses.replace(s, expr=self.expr(s.expr, scope, allow_void=True))
        raise TypeError(f"unknown statement {s!r}")

    # expressions

    def expect_type(self, e: Expr, ty: str, scope: _Scope) -> Expr:
        out = self.expr(e, scope)
        if out.ty != ty:
            raise _err(f"expected {ty}, got {out.ty}", e)
        return out

    def expr(self, e: Expr, scope: _Scope, allow_void: bool = False) -> Expr:
        if isinstance(e, IntLit):
            return dataclasses.replace(e, ty="int")
        if isinstance(e, BoolLit):
            return dataclasses.replace(e, ty="bool")
        if isinstance(e, StrLit):
            return dataclasses.replace(e, ty="string")
        if isinstance(e, Name):
            local = scope.lookup(e.ident)
            if local is not None:
                return dataclasses.replace(e, ty=local, is_field=False)
            if e.ident in self.fields:
                return dataclasses.replace(e, ty=self.fields[e.ident], is_field=True)
            raise _err(f"undeclared variable {e.ident!r}", e)
        if isinstance(e, Unary):
            want = "bool" if e.op == "!" else "int"
            operand = self.expect_type(e.operand, want, scope)
            return dataclasses.replace(e, operand=operand, ty=want)
        if isinstance(e, Binary):
            return self.binary(e, scope)
        if isinstance(e, Call):
            method = self.methods.get(e.name)
            if method is None:
                raise _err(f"call to undeclared method {e.name!r}", e)
            if len(e.args) != len(method.params):
                raise _err(
                    f"{e.name!r} expects {len(method.params)} argument(s), got {len(e.args)}", e
                )
            args = tuple(
                self.expect_type(a, p.type, scope) for a, p in zip(e.args, method.params)
            )
            if method.return_type == "void" and not allow_void:
                raise _err(f"void method {e.name!r} used as a value", e)
            return dataclasses.replace(e, args=args, ty=method.return_type)
        raise TypeError(f"unknown expression {e!r}")

    def binary(self, e: Binary, scope: _Scope) -> Expr:
        left = self.expr(e.left, scope)
        right = self.expr(e.right, scope)
        op = e.op
        if op in ("&&", "||"):
            ok, ty = left.ty == right.ty == "bool", "bool"
        elif op in ("==", "!="):
            ok, ty = left.ty == right.ty, "bool"
        elif op in ("<", "<=", ">", ">="):
            ok, ty = left.ty == right.ty == "int", "bool"
        elif op == "+" and left.ty == "string":
            ok, ty = right.ty == "string", "string"
        elif op in ARITHMETIC_OPS:
            ok, ty = left.ty == right.ty == "int", "int"
        else:
            raise _err(f"unknown operator {op!r}", e)
        if not ok:
            raise _err(f"operator {op!r} not defined for {left.ty} and {right.ty}", e)
        return dataclasses.replace(e, left=left, right=right, ty=ty)


def _completes(stmts: tuple[Stmt, ...]) -> bool:
    """Whether a block may finish normally (without returning)."""
    for s in stmts:
        if isinstance(s, Return):
            return False
        if isinstance(s, If) and s.orelse is not None:
            if not _completes(s.then) and not _completes(s.orelse):
                return False
    return True


def check_members(class_name: str, fields: tuple[FieldDecl, ...], members: tuple) -> tuple:
    return Checker(class_name, fields, members).check()
