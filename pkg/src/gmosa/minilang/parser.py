"""Recursive-descent parser producing an unchecked syntax tree."""

from __future__ import annotations

from dataclasses import dataclass

from gmosa.minilang.errors import MiniLangSyntaxError
from gmosa.minilang.lexer import Token, tokenize
from gmosa.minilang.nodes import (
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
    Param,
    Return,
    Stmt,
    StrLit,
    Unary,
    VarDecl,
    While,
)

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

_TYPES = ("int", "bool", "string", "void")

# Binary precedence levels, loosest first.
_LEVELS = (("||",), ("&&",), ("==", "!="), ("<", "<=", ">", ">="), ("+", "-"), ("*", "/", "%"))


@dataclass(frozen=True)
class ClassSyntax:
    name: str
    fields: tuple[FieldDecl, ...]
    members: tuple  # Constructor | Method, declaration order
    predicate_count: int


class Parser:
    def __init__(self, source: str) -> None:
        self.tokens: list[Token] = tokenize(source)
        self.i = 0
        self.next_pid = 0
        self.class_name = ""

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def error(self, message: str, tok: Token | None = None) -> MiniLangSyntaxError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return MiniLangSyntaxError(f"{message}, found {found}", tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "keyword") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        tok = self.tok
        self.i += 1
        return tok

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            raise self.error("expected identifier")
        tok = self.tok
        self.i += 1
        return tok

    def type_name(self, allow_void: bool = False) -> str:
        tok = self.tok
        if tok.kind == "keyword" and tok.text in _TYPES and (allow_void or tok.text != "void"):
            self.i += 1
            return tok.text
        raise self.error("expected type")

    # declarations

    def parse_class(self) -> ClassSyntax:
        self.expect("class")
        self.class_name = self.ident().text
        self.expect("{")
        fields: list[FieldDecl] = []
        members: list = []
        n_ctors = 0
        while not self.at("}"):
            tok = self.tok
            if tok.kind == "eof":
                raise self.error("expected '}'")
            if tok.kind == "ident" and self.peek().text == "(":
                if tok.text != self.class_name:
                    raise self.error(f"constructor name must be {self.class_name!r}")
                self.i += 1
                params = self.params()
                body = self.block()
                members.append(Constructor(n_ctors, params, body, pos=(tok.line, tok.column)))
                n_ctors += 1
                continue
            ty = self.type_name(allow_void=True)
            name = self.ident()
            if self.at(";"):
                if ty == "void":
                    raise self.error("field cannot be void", tok)
                self.i += 1
                fields.append(FieldDecl(ty, name.text, pos=(tok.line, tok.column)))
                continue
            params = self.params()
            body = self.block()
            members.append(Method(name.text, params, ty, body, pos=(tok.line, tok.column)))
        self.expect("}")
        if self.tok.kind != "eof":
            raise self.error("expected end of input")
        return ClassSyntax(self.class_name, tuple(fields), tuple(members), self.next_pid)

    def params(self) -> tuple[Param, ...]:
        self.expect("(")
        params: list[Param] = []
        if not self.at(")"):
            while True:
                tok = self.tok
                ty = self.type_name()
                params.append(Param(ty, self.ident().text, pos=(tok.line, tok.column)))
                if not self.at(","):
                    break
                self.i += 1
        self.expect(")")
        return tuple(params)

    # statements

    def block(self) -> tuple[Stmt, ...]:
        self.expect("{")
        stmts: list[Stmt] = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                raise self.error("expected '}'")
            stmts.append(self.statement())
        self.expect("}")
        return tuple(stmts)

    def statement(self) -> Stmt:
        tok = self.tok
        pos = (tok.line, tok.column)
        if self.at("if"):
            return self.if_statement()
        if self.at("while"):
            self.i += 1
            pid = self.new_pid()
            self.expect("(")
            cond = self.expression()
            self.expect(")")
            return While(pid, cond, self.block(), pos=pos)
        if self.at("return"):
            self.i += 1
            value = None if self.at(";") else self.expression()
            self.expect(";")
            return Return(value, pos=pos)
        if tok.kind == "keyword" and tok.text in ("int", "bool", "string"):
            ty = self.type_name()
            name = self.ident().text
            init = None
            if self.at("="):
                self.i += 1
                init = self.expression()
            self.expect(";")
            return VarDecl(ty, name, init, pos=pos)
        if tok.kind == "ident" and self.peek().text == "=" and self.peek().kind == "op":
            self.i += 2
            value = self.expression()
            self.expect(";")
            return Assign(tok.text, value, pos=pos)
        expr = self.expression()
        self.expect(";")
        return ExprStmt(expr, pos=pos)

    def if_statement(self) -> If:
        tok = self.expect("if")
        pid = self.new_pid()
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        then = self.block()
        orelse = None
        if self.at("else"):
            self.i += 1
            orelse = (self.if_statement(),) if self.at("if") else self.block()
        return If(pid, cond, then, orelse, pos=(tok.line, tok.column))

    def new_pid(self) -> int:
        pid = self.next_pid
        self.next_pid += 1
        return pid

    # expressions

    def expression(self, level: int = 0) -> Expr:
        if level == len(_LEVELS):
            return self.unary()
        left = self.expression(level + 1)
        while self.tok.kind == "op" and self.tok.text in _LEVELS[level]:
            op = self.tok
            self.i += 1
            right = self.expression(level + 1)
            left = Binary(op.text, left, right, pos=(op.line, op.column))
        return left

    def unary(self) -> Expr:
        tok = self.tok
        if self.at("!") or self.at("-"):
            self.i += 1
            if tok.text == "-" and self.tok.kind == "int":
                lit = self.tok
                self.i += 1
                return self.int_literal(-lit.value, lit)
            return Unary(tok.text, self.unary(), pos=(tok.line, tok.column))
        return self.primary()

    def int_literal(self, value: int, tok: Token) -> IntLit:
        if not INT_MIN <= value <= INT_MAX:
            raise MiniLangSyntaxError("integer literal out of range", tok.line, tok.column)
        return IntLit(value, pos=(tok.line, tok.column))

    def primary(self) -> Expr:
        tok = self.tok
        pos = (tok.line, tok.column)
        if tok.kind == "int":
            self.i += 1
            return self.int_literal(tok.value, tok)
        if tok.kind == "string":
            self.i += 1
            return StrLit(tok.value, pos=pos)
        if self.at("true") or self.at("false"):
            self.i += 1
            return BoolLit(tok.text == "true", pos=pos)
        if self.at("("):
            self.i += 1
            inner = self.expression()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            self.i += 1
            if self.at("("):
                self.i += 1
                args: list[Expr] = []
                if not self.at(")"):
                    while True:
                        args.append(self.expression())
                        if not self.at(","):
                            break
                        self.i += 1
                self.expect(")")
                return Call(tok.text, tuple(args), pos=pos)
            return Name(tok.text, pos=pos)
        raise self.error("expected expression")


def parse_syntax(source: str) -> ClassSyntax:
    return Parser(source).parse_class()
