"""Normal-play sums of i-Mark heaps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from operator import xor
from typing import Iterable, Sequence

from . import engine
from .closedform import FamilyEvaluator, family_for
from .engine import Convention, GameSpec


@dataclass(frozen=True)
class SumPosition:
    heaps: tuple[tuple[GameSpec, int], ...]

    def __post_init__(self):
        for _, n in self.heaps:
            if n < 0:
                raise ValueError("heap sizes must be nonnegative")

    @classmethod
    def of(cls, spec: GameSpec, sizes: Iterable[int]) -> "SumPosition":
        return cls(tuple((spec, int(n)) for n in sizes))


@dataclass(frozen=True)
class MoveAdvice:
    heap_index: int
    new_size: int
    total: int


def nim_sum(values: Iterable[int]) -> int:
    return reduce(xor, values, 0)


@lru_cache(maxsize=256)
def _evaluator(spec: GameSpec) -> FamilyEvaluator | None:
    ev = family_for(spec, Convention.NORMAL)
    return ev if ev is not None and ev.has_grundy else None


class _Grundy:
    """Per-spec g lookup: closed form when available, oracle table otherwise."""

    def __init__(self, budget: int | None = None):
        self.budget = budget
        self._tables: dict[GameSpec, engine.GrundyTable] = {}

    def __call__(self, spec: GameSpec, n: int) -> int:
        ev = _evaluator(spec)
        if ev is not None and ev.in_domain(n):
            return ev.grundy(n)
        table = self._tables.get(spec)
        if table is None or table.limit < n:
            table = engine.build_table(spec, n, self.budget)
            self._tables[spec] = table
        return int(table.values[n])

    def reserve(self, spec: GameSpec, n: int) -> None:
        ev = _evaluator(spec)
        if ev is not None and not getattr(ev, "odd_only", False):
            return
        table = self._tables.get(spec)
        if table is None or table.limit < n:
            self._tables[spec] = engine.build_table(spec, n, self.budget)


def sum_grundy(pos: SumPosition | Sequence[tuple[GameSpec, int]], budget: int | None = None) -> int:
    if not isinstance(pos, SumPosition):
        pos = SumPosition(tuple(pos))
    g = _Grundy(budget)
    for spec, n in pos.heaps:
        g.reserve(spec, n)
    return nim_sum(g(spec, n) for spec, n in pos.heaps)


def optimal_move(pos: SumPosition | Sequence[tuple[GameSpec, int]], budget: int | None = None) -> MoveAdvice | None:
    """A move to a zero nim-sum, or None from a P-position.

    Ties go to the lowest heap index, then the smallest resulting heap.
    """
    if not isinstance(pos, SumPosition):
        pos = SumPosition(tuple(pos))
    g = _Grundy(budget)
    for spec, n in pos.heaps:
        g.reserve(spec, n)
    values = [g(spec, n) for spec, n in pos.heaps]
    total = nim_sum(values)
    if total == 0:
        return None
    for i, (spec, n) in enumerate(pos.heaps):
        target = values[i] ^ total
        for m in engine.options(spec, n):
            if g(spec, m) == target:
                return MoveAdvice(i, m, 0)
    raise AssertionError("nonzero nim-sum without a zeroing move")  # pragma: no cover
