"""Random test generation and the two insertion procedures.

In intra-method mode a test may hold at most one call to a production method
(a method that is neither a setter nor an accessor); once it is inserted the
test's ``cut_call_inserted`` flag is set and generation stops.
"""

from __future__ import annotations

import string

from gmosa.genome.testcase import (
    INTRA_METHOD,
    Assignment,
    ConstructorCall,
    FieldRead,
    FieldWrite,
    GeneratorConfig,
    MethodCall,
    Primitive,
    TestCase,
    declared_type,
)

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1
INT_BOUNDARIES = (0, 1, -1, INT_MAX, INT_MIN)
BOUNDARY_BIAS = 0.1
INT_RANGE = 100
MAX_STRING = 8
STRING_ALPHABET = string.ascii_lowercase + string.digits
REUSE_PRIMITIVE = 0.5
REUSE_INSTANCE = 0.8
FIELD_WRITE = 2 / 3


class UntestableClassError(Exception):
    """No statement sequence can be built for the class."""


class _Full(Exception):
    """Raised when an insertion would exceed the maximum length."""


def random_primitive(ty: str, rng):
    if ty == "int":
        if rng.random() < BOUNDARY_BIAS:
            return rng.choice(INT_BOUNDARIES)
        return rng.randint(-INT_RANGE, INT_RANGE)
    if ty == "bool":
        return rng.random() < 0.5
    if ty == "string":
        return "".join(rng.choice(STRING_ALPHABET) for _ in range(rng.randint(0, MAX_STRING)))
    raise ValueError(f"not a primitive type: {ty!r}")


class _Builder:
    """Appends statements to a working copy, synthesising dependencies."""

    def __init__(self, test: TestCase, cut, config: GeneratorConfig, rng) -> None:
        self.cut = cut
        self.config = config
        self.rng = rng
        self.stmts = list(test.statements)
        self.types = [declared_type(s, cut) for s in self.stmts]
        self.flag = test.cut_call_inserted

    def append(self, stmt) -> int:
        if len(self.stmts) >= self.config.max_length:
            raise _Full
        self.stmts.append(stmt)
        self.types.append(declared_type(stmt, self.cut))
        return len(self.stmts) - 1

    def vars_of(self, ty: str) -> list[int]:
        return [i for i, t in enumerate(self.types) if t == ty]

    def value(self, ty: str, depth: int = 0) -> int:
        rng = self.rng
        if ty == self.cut.name:
            existing = self.vars_of(ty)
            if existing and (rng.random() < REUSE_INSTANCE or depth > 2):
                return rng.choice(existing)
            return self.construct(rng.randrange(len(self.cut.constructors)), depth + 1)
        existing = self.vars_of(ty)
        if existing and rng.random() < REUSE_PRIMITIVE:
            return rng.choice(existing)
        return self.append(Primitive(ty, random_primitive(ty, rng)))

    def construct(self, ctor: int, depth: int = 0) -> int:
        params = self.cut.constructors[ctor].param_types
        args = tuple(self.value(t, depth) for t in params)
        return self.append(ConstructorCall(ctor, args))

    def call(self, method, receiver: int | None = None) -> int:
        if receiver is None:
            receiver = self.value(self.cut.name)
        args = tuple(self.value(t) for t in method.param_types)
        index = self.append(MethodCall(receiver, method.name, args))
        if self.cut.is_production(method.name):
            self.flag = True
        return index

    def field_access(self, f, receiver: int | None = None, write: bool | None = None) -> int:
        if receiver is None:
            receiver = self.value(self.cut.name)
        if write is None:
            write = self.rng.random() < FIELD_WRITE
        if write:
            return self.append(FieldWrite(receiver, f.name, self.value(f.type)))
        return self.append(FieldRead(receiver, f.name))

    def setup_call(self, receiver: int | None = None) -> bool:
        """Append a random element of S: a setter call or a field write."""
        options = [("m", m) for m in self.cut.methods if m.name in self.cut.setters]
        options += [("f", f) for f in self.cut.fields]
        if not options:
            return False
        kind, member = self.rng.choice(options)
        if kind == "m":
            self.call(member, receiver)
        else:
            self.field_access(member, receiver, write=True)
        return True

    def result(self, template: TestCase) -> TestCase:
        return TestCase(self.stmts, self.flag, None, template.phase_label)


def _restricted(test: TestCase, config: GeneratorConfig) -> bool:
    return config.mode == INTRA_METHOD and test.cut_call_inserted


def insert_call_on_cut(test: TestCase, cut, config: GeneratorConfig, rng) -> TestCase:
    """Append a call to a random constructor, method or field of the class.

    Returns ``test`` unchanged when the insertion cannot be made (for example
    because it would exceed the maximum length).
    """
    intra = config.mode == INTRA_METHOD
    restricted = _restricted(test, config)
    members = [("c", i) for i in range(len(cut.constructors))]
    members += [
        ("m", m) for m in cut.methods if not (restricted and cut.is_production(m.name))
    ]
    members += [("f", f) for f in cut.fields]
    if not members:
        return test
    b = _Builder(test, cut, config, rng)
    kind, member = rng.choice(members)
    try:
        if kind == "c":
            b.construct(member)
        elif kind == "f":
            b.field_access(member)
        elif intra and rng.random() <= config.insertion_set and b.setup_call():
            pass
        else:
            b.call(member)
    except _Full:
        return test
    return b.result(test)


def insert_call_on_value(test: TestCase, cut, config: GeneratorConfig, rng) -> TestCase:
    """Append a statement that uses a value already defined in the test."""
    b = _Builder(test, cut, config, rng)
    candidates = [i for i, t in enumerate(b.types) if t is not None]
    if not candidates:
        return test
    v = rng.choice(candidates)
    ty = b.types[v]
    try:
        if ty == cut.name:
            restricted = _restricted(test, config)
            options = [
                ("m", m) for m in cut.methods if not (restricted and cut.is_production(m.name))
            ]
            options += [("f", f) for f in cut.fields]
            if not options:
                return test
            kind, member = rng.choice(options)
            if kind == "m":
                b.call(member, receiver=v)
            else:
                b.field_access(member, receiver=v)
        else:
            others = [i for i in b.vars_of(ty) if i != v]
            if others and rng.random() < 0.5:
                b.append(Assignment(v, rng.choice(others)))
            else:
                origin = test.statements[v]
                if isinstance(origin, Primitive):
                    value = perturb_primitive(origin.type, origin.value, rng)
                else:
                    value = random_primitive(ty, rng)
                b.append(Primitive(ty, value))
    except _Full:
        return test
    return b.result(test)


def perturb_primitive(ty: str, value, rng):
    """A nearby literal: int +- {1..10}, flipped bool, or a one-character string edit."""
    if ty == "int":
        delta = rng.randint(1, 10)
        out = value + delta if rng.random() < 0.5 else value - delta
        return max(INT_MIN, min(INT_MAX, out))
    if ty == "bool":
        return not value
    chars = list(value)
    ops = ["insert"] if not chars else ["replace", "delete"]
    if chars and len(chars) < MAX_STRING:
        ops.append("insert")
    op = rng.choice(ops)
    if op == "insert":
        chars.insert(rng.randint(0, len(chars)), rng.choice(STRING_ALPHABET))
    elif op == "delete":
        del chars[rng.randrange(len(chars))]
    else:
        i = rng.randrange(len(chars))
        chars[i] = rng.choice(STRING_ALPHABET.replace(chars[i], ""))
    return "".join(chars)


def random_test(cut, config: GeneratorConfig, rng) -> TestCase:
    """Build one random test of random length in [1, max_length]."""
    if not cut.constructors:
        raise UntestableClassError(f"class {cut.name} has no constructor")
    target = rng.randint(1, config.max_length)
    test = TestCase()
    intra = config.mode == INTRA_METHOD
    attempts = 0
    while attempts < config.max_attempts and len(test) < target:
        if intra and test.cut_call_inserted:
            break
        attempts += 1
        if rng.random() <= config.insertion_uut:
            test = insert_call_on_cut(test, cut, config, rng)
        else:
            test = insert_call_on_value(test, cut, config, rng)
    if not test.statements:
        raise UntestableClassError(
            f"no statement could be inserted for class {cut.name} within {attempts} attempts"
        )
    return test
