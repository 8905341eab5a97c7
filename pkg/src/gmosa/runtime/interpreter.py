"""Instrumented interpreter.

Each class is compiled once into nested Python closures; executing a test
then walks the closures while recording predicate evaluations with their
branch distances.  Compiled programs are cached on the ``CutClass``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from gmosa.genome.testcase import (
    Assignment,
    ConstructorCall,
    FieldRead,
    FieldWrite,
    MethodCall,
    Primitive,
    TestCase,
)
from gmosa.minilang.nodes import (
    Assign,
    Binary,
    BoolLit,
    Call,
    Constructor,
    ExprStmt,
    If,
    IntLit,
    Name,
    Return,
    StrLit,
    Unary,
    VarDecl,
    While,
)
from gmosa.runtime.distance import equality_distances, relational_distances

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1
DEFAULT_STEP_BUDGET = 10_000
MAX_CALL_DEPTH = 64

OK = "ok"
NOT_REACHED = "not-reached"
DIV_BY_ZERO = "div-by-zero"
MOD_BY_ZERO = "mod-by-zero"
OVERFLOW = "overflow"
TIMEOUT = "timeout"
STACK_OVERFLOW = "stack-overflow"
ERROR_KINDS = (DIV_BY_ZERO, MOD_BY_ZERO, OVERFLOW, TIMEOUT, STACK_OVERFLOW)

_DEFAULTS = {"int": 0, "bool": False, "string": ""}
_PY_TYPES = {"int": int, "bool": bool, "string": str}


class MiniRuntimeError(Exception):
    def __init__(self, kind: str) -> None:
        super().__init__(kind)
        self.kind = kind


class MalformedTestError(Exception):
    """A test references a missing or ill-typed variable (a generator bug)."""


class Instance:
    __slots__ = ("fields",)

    def __init__(self, fields: list) -> None:
        self.fields = fields


class Context:
    __slots__ = ("steps", "budget", "preds", "entered", "conds", "depth")

    def __init__(self, budget: int, record_conditions: bool = False) -> None:
        self.steps = 0
        self.budget = budget
        self.preds: list = []
        self.entered: set = set()
        self.conds: Optional[list] = [] if record_conditions else None
        self.depth = 0


@dataclass(frozen=True)
class ExecutionTrace:
    outcomes: tuple[str, ...]
    predicates: tuple[tuple[int, bool, int, int], ...]
    observed: tuple[tuple[int, object], ...]
    steps_used: int
    terminated: bool
    entered: frozenset
    conditions: tuple = ()

    @property
    def error(self) -> Optional[tuple[int, str]]:
        for i, outcome in enumerate(self.outcomes):
            if outcome not in (OK, NOT_REACHED):
                return (i, outcome)
        return None


def _check_int(v: int) -> int:
    if v > INT_MAX or v < INT_MIN:
        raise MiniRuntimeError(OVERFLOW)
    return v


def _java_div(a: int, b: int) -> int:
    if b == 0:
        raise MiniRuntimeError(DIV_BY_ZERO)
    q = abs(a) // abs(b)
    return _check_int(q if (a < 0) == (b < 0) else -q)


def _java_mod(a: int, b: int) -> int:
    if b == 0:
        raise MiniRuntimeError(MOD_BY_ZERO)
    r = abs(a) % abs(b)
    return -r if a < 0 else r


class _MemberCompiler:
    def __init__(self, program: Program, member) -> None:
        self.program = program
        self.member = member
        self.slots = 0

    def new_slot(self) -> int:
        self.slots += 1
        return self.slots - 1

    # expressions

    def expr(self, e, scope: dict):
        if isinstance(e, (IntLit, BoolLit, StrLit)):
            value = e.value
            return lambda ctx, obj, loc: value
        if isinstance(e, Name):
            if not e.is_field:
                slot = scope[e.ident]
                return lambda ctx, obj, loc: loc[slot]
            fi = self.program.field_index[e.ident]
            return lambda ctx, obj, loc: obj.fields[fi]
        if isinstance(e, Unary):
            inner = self.expr(e.operand, scope)
            if e.op == "!":
                return lambda ctx, obj, loc: not inner(ctx, obj, loc)
            return lambda ctx, obj, loc: _check_int(-inner(ctx, obj, loc))
        if isinstance(e, Call):
            return self.call(e, scope)
        return self.binary(e, scope)

    def binary(self, e: Binary, scope: dict):
        lf = self.expr(e.left, scope)
        rf = self.expr(e.right, scope)
        op = e.op
        if op == "&&":
            return lambda ctx, obj, loc: lf(ctx, obj, loc) and rf(ctx, obj, loc)
        if op == "||":
            return lambda ctx, obj, loc: lf(ctx, obj, loc) or rf(ctx, obj, loc)
        if op == "+" and e.ty == "string":
            return lambda ctx, obj, loc: lf(ctx, obj, loc) + rf(ctx, obj, loc)
        if op == "+":

            def add(ctx, obj, loc):
                v = lf(ctx, obj, loc) + rf(ctx, obj, loc)
                if v > INT_MAX or v < INT_MIN:
                    raise MiniRuntimeError(OVERFLOW)
                return v

            return add
        if op == "-":

            def sub(ctx, obj, loc):
                v = lf(ctx, obj, loc) - rf(ctx, obj, loc)
                if v > INT_MAX or v < INT_MIN:
                    raise MiniRuntimeError(OVERFLOW)
                return v

            return sub
        if op == "*":
            return lambda ctx, obj, loc: _check_int(lf(ctx, obj, loc) * rf(ctx, obj, loc))
        if op == "/":
            return lambda ctx, obj, loc: _java_div(lf(ctx, obj, loc), rf(ctx, obj, loc))
        if op == "%":
            return lambda ctx, obj, loc: _java_mod(lf(ctx, obj, loc), rf(ctx, obj, loc))
        if op == "==":
            return lambda ctx, obj, loc: lf(ctx, obj, loc) == rf(ctx, obj, loc)
        if op == "!=":
            return lambda ctx, obj, loc: lf(ctx, obj, loc) != rf(ctx, obj, loc)
        if op == "<":
            return lambda ctx, obj, loc: lf(ctx, obj, loc) < rf(ctx, obj, loc)
        if op == "<=":
            return lambda ctx, obj, loc: lf(ctx, obj, loc) <= rf(ctx, obj, loc)
        if op == ">":
            return lambda ctx, obj, loc: lf(ctx, obj, loc) > rf(ctx, obj, loc)
        if op == ">=":
            return lambda ctx, obj, loc: lf(ctx, obj, loc) >= rf(ctx, obj, loc)
        raise ValueError(f"unknown operator {op!r}")

    def call(self, e: Call, scope: dict):
        methods = self.program.methods
        name = e.name
        args = [self.expr(a, scope) for a in e.args]
        return lambda ctx, obj, loc: methods[name](ctx, obj, [a(ctx, obj, loc) for a in args])

    # conditions with branch distances

    def distance(self, e, scope: dict, pid: int, path: tuple):
        """Closure returning ``(outcome, true distance, false distance)``."""
        if isinstance(e, Binary) and e.op in ("&&", "||"):
            lf = self.distance(e.left, scope, pid, path + ("left",))
            rf = self.distance(e.right, scope, pid, path + ("right",))
            if e.op == "&&":

                def conj(ctx, obj, loc):
                    v1, t1, f1 = lf(ctx, obj, loc)
                    if not v1:
                        # The right operand is skipped; its distance is unknown, count K.
                        return (False, t1 + 1, f1)
                    v2, t2, f2 = rf(ctx, obj, loc)
                    return (v2, t1 + t2, min(f1, f2))

                return conj

            def disj(ctx, obj, loc):
                v1, t1, f1 = lf(ctx, obj, loc)
                if v1:
                    return (True, t1, f1 + 1)
                v2, t2, f2 = rf(ctx, obj, loc)
                return (v2, min(t1, t2), f1 + f2)

            return disj
        if isinstance(e, Unary) and e.op == "!":
            inner = self.distance(e.operand, scope, pid, path + ("operand",))

            def neg(ctx, obj, loc):
                v, t, f = inner(ctx, obj, loc)
                return (not v, f, t)

            return neg
        leaf = self.leaf_distance(e, scope)

        def record(ctx, obj, loc):
            result = leaf(ctx, obj, loc)
            if ctx.conds is not None:
                ctx.conds.append((pid, path, *result))
            return result

        return record

    def leaf_distance(self, e, scope: dict):
        if isinstance(e, Binary) and e.op in ("<", "<=", ">", ">="):
            lf, rf, op = self.expr(e.left, scope), self.expr(e.right, scope), e.op
            return lambda ctx, obj, loc: relational_distances(op, lf(ctx, obj, loc), rf(ctx, obj, loc))
        if isinstance(e, Binary) and e.op in ("==", "!="):
            lf, rf, op = self.expr(e.left, scope), self.expr(e.right, scope), e.op
            if e.left.ty == "int":
                return lambda ctx, obj, loc: relational_distances(
                    op, lf(ctx, obj, loc), rf(ctx, obj, loc)
                )
            return lambda ctx, obj, loc: equality_distances(op, lf(ctx, obj, loc), rf(ctx, obj, loc))
        value = self.expr(e, scope)

        def boolean(ctx, obj, loc):
            v = value(ctx, obj, loc)
            return (True, 0, 1) if v else (False, 1, 0)

        return boolean

    def predicate(self, pid: int, cond, scope: dict):
        dist = self.distance(cond, scope, pid, ())

        def evaluate(ctx, obj, loc):
            v, t, f = dist(ctx, obj, loc)
            ctx.preds.append((pid, v, t, f))
            return v

        return evaluate

    # statements

    def block(self, stmts, parent: dict):
        scope = dict(parent)
        compiled = tuple(self.statement(s, scope) for s in stmts)

        def run(ctx, obj, loc):
            for s in compiled:
                ctx.steps += 1
                if ctx.steps > ctx.budget:
                    raise MiniRuntimeError(TIMEOUT)
                r = s(ctx, obj, loc)
                if r is not None:
                    return r
            return None

        return run

    def statement(self, s, scope: dict):
        if isinstance(s, VarDecl):
            slot = self.new_slot()
            if s.init is None:
                default = _DEFAULTS[s.type]
                init = lambda ctx, obj, loc: default  # noqa: E731
            else:
                init = self.expr(s.init, scope)
            scope[s.name] = slot

            def declare(ctx, obj, loc):
                loc[slot] = init(ctx, obj, loc)

            return declare
        if isinstance(s, Assign):
            value = self.expr(s.value, scope)
            if s.is_field:
                fi = self.program.field_index[s.name]

                def store_field(ctx, obj, loc):
                    obj.fields[fi] = value(ctx, obj, loc)

                return store_field
            slot = scope[s.name]

            def store_local(ctx, obj, loc):
                loc[slot] = value(ctx, obj, loc)

            return store_local
        if isinstance(s, If):
            cond = self.predicate(s.pid, s.cond, scope)
            then = self.block(s.then, scope)
            orelse = self.block(s.orelse, scope) if s.orelse is not None else None
            if orelse is None:
                return lambda ctx, obj, loc: then(ctx, obj, loc) if cond(ctx, obj, loc) else None
            return lambda ctx, obj, loc: (
                then(ctx, obj, loc) if cond(ctx, obj, loc) else orelse(ctx, obj, loc)
            )
        if isinstance(s, While):
            cond = self.predicate(s.pid, s.cond, scope)
            body = self.block(s.body, scope)

            def loop(ctx, obj, loc):
                while True:
                    ctx.steps += 1
                    if ctx.steps > ctx.budget:
                        raise MiniRuntimeError(TIMEOUT)
                    if not cond(ctx, obj, loc):
                        return None
                    r = body(ctx, obj, loc)
                    if r is not None:
                        return r

            return loop
        if isinstance(s, Return):
            if s.value is None:
                return lambda ctx, obj, loc: (None,)
            value = self.expr(s.value, scope)
            return lambda ctx, obj, loc: (value(ctx, obj, loc),)
        if isinstance(s, ExprStmt):
            value = self.expr(s.expr, scope)

            def discard(ctx, obj, loc):
                value(ctx, obj, loc)

            return discard
        raise TypeError(f"unknown statement {s!r}")

    def compile(self):
        scope = {}
        for p in self.member.params:
            scope[p.name] = self.new_slot()
        body = self.block(self.member.body, scope)
        key = self.member.key
        nslots_ref = self

        def invoke(ctx, obj, args):
            ctx.depth += 1
            if ctx.depth > MAX_CALL_DEPTH:
                raise MiniRuntimeError(STACK_OVERFLOW)
            ctx.entered.add(key)
            loc = args + [None] * (nslots_ref.slots - len(args))
            r = body(ctx, obj, loc)
            ctx.depth -= 1
            return None if r is None else r[0]

        return invoke


class Program:
    """A compiled class (original or mutant)."""

    def __init__(self, cut) -> None:
        self.cut = cut
        self.field_index = {f.name: i for i, f in enumerate(cut.fields)}
        self.field_defaults = [_DEFAULTS[f.type] for f in cut.fields]
        self.methods: dict = {}
        self.constructors: list = []
        self.param_types: dict = {}
        for m in cut.members:
            invoke = _MemberCompiler(self, m).compile()
            if isinstance(m, Constructor):
                self.constructors.append(invoke)
            else:
                self.methods[m.name] = invoke
                self.param_types[m.name] = tuple(_PY_TYPES[p.type] for p in m.params)
        self.ctor_param_types = [
            tuple(_PY_TYPES[p.type] for p in c.params) for c in cut.constructors
        ]
        self.return_void = {m.name: m.return_type == "void" for m in cut.methods}


def program_for(cut, mutant=None) -> Program:
    key = ("program", None if mutant is None else mutant.key)
    program = cut.cache.get(key)
    if program is None:
        target = cut if mutant is None else mutant.apply(cut)
        program = Program(target)
        cut.cache[key] = program
    return program


def _arg(env: list, i: int, index: int, expected: type):
    if not 0 <= index < i:
        raise MalformedTestError(f"statement {i} references {index}")
    v = env[index]
    if type(v) is not expected:
        raise MalformedTestError(f"statement {i}: variable {index} is not {expected.__name__}")
    return v


def _receiver(env: list, i: int, index: int) -> Instance:
    if not 0 <= index < i:
        raise MalformedTestError(f"statement {i} references {index}")
    obj = env[index]
    if not isinstance(obj, Instance):
        raise MalformedTestError(f"statement {i}: variable {index} is not an instance")
    return obj


def execute(
    cut,
    mutant,
    test: TestCase,
    step_budget: int = DEFAULT_STEP_BUDGET,
    record_conditions: bool = False,
) -> ExecutionTrace:
    """Run ``test`` against ``cut`` (or the given mutant of it)."""
    if sys.getrecursionlimit() < 20_000:
        sys.setrecursionlimit(20_000)
    program = program_for(cut, mutant)
    ctx = Context(step_budget, record_conditions)
    stmts = test.statements
    n = len(stmts)
    env: list = [None] * n
    outcomes = [NOT_REACHED] * n
    observed = []
    terminated = True
    field_index = program.field_index
    for i, s in enumerate(stmts):
        ctx.steps += 1
        try:
            if ctx.steps > ctx.budget:
                raise MiniRuntimeError(TIMEOUT)
            cls = type(s)
            if cls is Primitive:
                env[i] = s.value
            elif cls is MethodCall:
                obj = _receiver(env, i, s.receiver)
                types = program.param_types.get(s.method)
                if types is None or len(types) != len(s.args):
                    raise MalformedTestError(f"statement {i}: bad call {s.method}")
                args = [_arg(env, i, a, t) for a, t in zip(s.args, types)]
                ctx.depth = 0
                value = program.methods[s.method](ctx, obj, args)
                if not program.return_void[s.method]:
                    env[i] = value
                    observed.append((i, value))
            elif cls is ConstructorCall:
                types = program.ctor_param_types[s.ctor]
                if len(types) != len(s.args):
                    raise MalformedTestError(f"statement {i}: bad constructor arity")
                args = [_arg(env, i, a, t) for a, t in zip(s.args, types)]
                obj = Instance(list(program.field_defaults))
                ctx.depth = 0
                program.constructors[s.ctor](ctx, obj, args)
                env[i] = obj
            elif cls is FieldWrite:
                obj = _receiver(env, i, s.receiver)
                fi = field_index[s.field]
                value = env[s.source] if 0 <= s.source < i else None
                if type(value) is not type(program.field_defaults[fi]):
                    raise MalformedTestError(f"statement {i}: bad field write")
                obj.fields[fi] = value
            elif cls is FieldRead:
                obj = _receiver(env, i, s.receiver)
                env[i] = obj.fields[field_index[s.field]]
            elif cls is Assignment:
                if not (0 <= s.target < i and 0 <= s.source < i):
                    raise MalformedTestError(f"statement {i}: bad assignment")
                if type(env[s.target]) is not type(env[s.source]) or isinstance(
                    env[s.source], Instance
                ):
                    raise MalformedTestError(f"statement {i}: ill-typed assignment")
                env[s.target] = env[s.source]
            else:
                raise MalformedTestError(f"unknown statement {s!r}")
        except MiniRuntimeError as exc:
            outcomes[i] = exc.kind
            terminated = exc.kind != TIMEOUT
            break
        except RecursionError:
            outcomes[i] = STACK_OVERFLOW
            break
        outcomes[i] = OK
    return ExecutionTrace(
        outcomes=tuple(outcomes),
        predicates=tuple(ctx.preds),
        observed=tuple(observed),
        steps_used=min(ctx.steps, step_budget),
        terminated=terminated,
        entered=frozenset(ctx.entered),
        conditions=tuple(ctx.conds) if ctx.conds is not None else (),
    )
