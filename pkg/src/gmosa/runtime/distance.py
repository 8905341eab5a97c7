"""Branch distances (K = 1) and their normalisation."""

from __future__ import annotations

K = 1


def levenshtein(a: str, b: str) -> int:
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        for j, cb in enumerate(b, 1):
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb))
            )
        previous = current
    return previous[-1]


def relational_distances(op: str, a: int, b: int) -> tuple[bool, int, int]:
    """Outcome plus distances to the true and to the false outcome."""
    if op == "==":
        return (a == b, abs(a - b), K if a == b else 0)
    if op == "!=":
        return (a != b, K if a == b else 0, abs(a - b))
    if op == "<":
        return (a < b, max(0, a - b + K), max(0, b - a))
    if op == "<=":
        return (a <= b, max(0, a - b), max(0, b - a + K))
    if op == ">":
        return (a > b, max(0, b - a + K), max(0, a - b))
    if op == ">=":
        return (a >= b, max(0, b - a), max(0, a - b + K))
    raise ValueError(f"not a relational operator: {op!r}")


def equality_distances(op: str, a, b) -> tuple[bool, int, int]:
    """``==`` / ``!=`` on ints, bools or strings."""
    if type(a) is not type(b):
        raise TypeError(f"cannot compare {type(a).__name__} with {type(b).__name__}")
    if isinstance(a, str):
        d = levenshtein(a, b)
    elif isinstance(a, bool):
        d = 0 if a == b else K
    else:
        d = abs(a - b)
    eq = a == b
    if op == "==":
        return (eq, d, K if eq else 0)
    if op == "!=":
        return (not eq, K if eq else 0, d)
    raise ValueError(f"not an equality operator: {op!r}")


def branch_distance(comparison: str, lhs, rhs=None, desired: bool = True) -> int:
    """Distance of one atomic comparison to the ``desired`` outcome.

    ``comparison`` is a relational operator or ``"boolean"`` (``lhs`` is then
    the bool value and ``rhs`` is ignored).
    """
    if comparison == "boolean":
        if not isinstance(lhs, bool):
            raise TypeError("boolean condition needs a bool value")
        return 0 if lhs == desired else K
    if comparison in ("==", "!="):
        _, dt, df = equality_distances(comparison, lhs, rhs)
    else:
        if isinstance(lhs, (bool, str)) or isinstance(rhs, (bool, str)):
            raise TypeError(f"operator {comparison!r} needs int operands")
        _, dt, df = relational_distances(comparison, lhs, rhs)
    return dt if desired else df


def normalize(d: float) -> float:
    """Map a distance in [0, inf) into [0, 1): d / (d + 1)."""
    return d / (d + 1.0)
