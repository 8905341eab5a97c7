"""Crossover and mutation with reference repair."""

from __future__ import annotations

from gmosa.genome.generation import (
    insert_call_on_cut,
    insert_call_on_value,
    perturb_primitive,
    random_primitive,
)
from gmosa.genome.testcase import (
    INTRA_METHOD,
    Assignment,
    GeneratorConfig,
    Primitive,
    TestCase,
    declared_type,
    is_production_call,
    required_types,
    with_refs,
)


def repair(cut, entries, rng, intra: bool) -> list:
    """Rebuild a statement list whose references may dangle.

    ``entries`` is a sequence of ``(old_index, statement)`` pairs whose
    references use the old index space.  A reference that no longer resolves
    to a compatible earlier variable is re-bound to a random compatible one;
    statements that cannot be re-bound are dropped, which in turn may drop
    their dependants.  In intra-method mode every production call after the
    first is dropped as well.
    """
    out: list = []
    types: list = []
    mapping: dict[int, int] = {}
    productions = 0
    for old, stmt in entries:
        if intra and is_production_call(stmt, cut):
            if productions:
                continue
        new_refs = []
        ok = True
        if isinstance(stmt, Assignment):
            target = mapping.get(stmt.target)
            if target is None or types[target] in (None, cut.name):
                ok = False
            else:
                want = (types[target], types[target])
                refs = (stmt.target, stmt.source)
        else:
            want = required_types(stmt, cut, types)
            refs = stmt.refs
        if ok:
            for ref, ty in zip(refs, want):
                new = mapping.get(ref)
                if new is None or types[new] != ty:
                    candidates = [i for i, t in enumerate(types) if t == ty]
                    if not candidates:
                        ok = False
                        break
                    new = rng.choice(candidates)
                new_refs.append(new)
        if not ok:
            continue
        if isinstance(stmt, Assignment) and new_refs[0] == new_refs[1]:
            continue
        if intra and is_production_call(stmt, cut):
            productions += 1
        mapping[old] = len(out)
        new_refs = tuple(new_refs)
        if new_refs != stmt.refs:
            stmt = with_refs(stmt, new_refs)
        out.append(stmt)
        types.append(declared_type(stmt, cut))
    return out


def _finish(stmts: list, cut, phase_label) -> TestCase:
    test = TestCase(stmts, False, None, phase_label)
    test.refresh_flag(cut)
    return test


def crossover(a: TestCase, b: TestCase, cut, config: GeneratorConfig, rng):
    """Single-point crossover: offspring swap suffixes after a common cut point."""
    point = rng.randint(0, min(len(a), len(b)))
    return crossover_at(a, b, cut, config, rng, point)


def crossover_at(a: TestCase, b: TestCase, cut, config: GeneratorConfig, rng, point: int):
    intra = config.mode == INTRA_METHOD
    first = a.statements[:point] + b.statements[point:]
    second = b.statements[:point] + a.statements[point:]
    return (
        _finish(repair(cut, list(enumerate(first)), rng, intra), cut, a.phase_label),
        _finish(repair(cut, list(enumerate(second)), rng, intra), cut, b.phase_label),
    )


def delete_statement(test: TestCase, index: int, cut, config: GeneratorConfig, rng) -> TestCase:
    entries = [(i, s) for i, s in enumerate(test.statements) if i != index]
    return _finish(repair(cut, entries, rng, config.mode == INTRA_METHOD), cut, test.phase_label)


FRESH_ARGUMENT = 0.5


def change_statement(test: TestCase, index: int, cut, rng, config: GeneratorConfig | None = None) -> TestCase:
    """Perturb a literal, or rebind one reference of a statement.

    A primitive-typed reference may instead be bound to a fresh literal
    inserted just before the statement (when the length bound allows), so
    calls whose arguments share one variable can be pulled apart.
    """
    stmts = list(test.statements)
    stmt = stmts[index]
    if isinstance(stmt, Primitive):
        stmts[index] = Primitive(stmt.type, perturb_primitive(stmt.type, stmt.value, rng))
        return TestCase(stmts, test.cut_call_inserted, None, test.phase_label)
    types = [declared_type(s, cut) for s in stmts[:index]]
    refs = list(stmt.refs)
    if isinstance(stmt, Assignment):
        want = (types[stmt.target],) * 2
    else:
        want = required_types(stmt, cut, types)
    room = config is not None and len(test) < config.max_length
    slots = []
    for pos, (ref, ty) in enumerate(zip(refs, want)):
        options = [i for i, t in enumerate(types) if t == ty and i != ref]
        fresh = room and ty in ("int", "bool", "string") and not (isinstance(stmt, Assignment) and pos == 0)
        if options or fresh:
            slots.append((pos, ty, options, fresh))
    if not slots:
        return test
    pos, ty, options, fresh = rng.choice(slots)
    if fresh and (not options or rng.random() < FRESH_ARGUMENT):
        origin = stmts[refs[pos]]
        if isinstance(origin, Primitive):
            value = perturb_primitive(ty, origin.value, rng)
        else:
            value = random_primitive(ty, rng)
        # Key -1 never collides with an old index; repair renumbers everything.
        refs[pos] = -1
        entries = list(enumerate(stmts[:index]))
        entries.append((-1, Primitive(ty, value)))
        entries.append((index, with_refs(stmt, tuple(refs))))
        entries.extend((i, s) for i, s in enumerate(stmts) if i > index)
        return _finish(repair(cut, entries, rng, config.mode == INTRA_METHOD), cut, test.phase_label)
    refs[pos] = rng.choice(options)
    if isinstance(stmt, Assignment) and refs[0] == refs[1]:
        return test
    stmts[index] = with_refs(stmt, tuple(refs))
    return TestCase(stmts, test.cut_call_inserted, None, test.phase_label)


def insert_statement(test: TestCase, cut, config: GeneratorConfig, rng) -> TestCase:
    if len(test) >= config.max_length:
        return test
    if rng.random() <= config.insertion_uut:
        return insert_call_on_cut(test, cut, config, rng)
    return insert_call_on_value(test, cut, config, rng)


def mutate_test(test: TestCase, cut, config: GeneratorConfig, rng, max_rounds: int = 5) -> TestCase:
    """Delete, change or insert statements.

    One of the three actions is drawn uniformly; delete and change consider
    each statement with probability 1/n.  Rounds repeat until the test
    changed or ``max_rounds`` is reached.
    """
    for _ in range(max_rounds):
        action = rng.randrange(3)
        n = len(test)
        if action == 2 or n == 0:
            out = insert_statement(test, cut, config, rng)
        elif action == 0:
            out = test
            # Walk backwards so earlier indices stay valid after deletions.
            for i in range(n - 1, -1, -1):
                if i < len(out) and rng.random() < 1.0 / n:
                    out = delete_statement(out, i, cut, config, rng)
        else:
            out = test
            for i in range(n):
                if rng.random() < 1.0 / n:
                    out = change_statement(out, i, cut, rng, config)
        if out is not test and out.statements != test.statements:
            return out
    return test.copy()
