"""Archive of the shortest known test for every covered target."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmosa.genome.testcase import TestCase


@dataclass
class Archive:
    targets: tuple[int, ...]
    best: dict[int, TestCase] = field(default_factory=dict)
    uncovered: set[int] = field(default_factory=set)

    def __post_init__(self) -> None:
        if not self.uncovered and not self.best:
            self.uncovered = set(self.targets)

    def update(self, test: TestCase, fitness) -> list[int]:
        """Record ``test`` for each of the archive's targets it covers.

        Returns the targets whose entry changed.
        """
        changed = []
        values = fitness.values
        for t in self.targets:
            if values[t] != 0.0:
                continue
            incumbent = self.best.get(t)
            if incumbent is None or len(test) < len(incumbent):
                self.best[t] = test
                changed.append(t)
            self.uncovered.discard(t)
        return changed

    @property
    def covered(self) -> set[int]:
        return set(self.best)

    def tests(self) -> list[TestCase]:
        """Distinct archived tests, ordered by the first target each covers."""
        seen: set[int] = set()
        out = []
        for t in self.targets:
            test = self.best.get(t)
            if test is not None and id(test) not in seen:
                seen.add(id(test))
                out.append(test)
        return out
