"""Brute-force containment oracle.

Exhaustive backtracking over strictly increasing state-to-interval mappings.
Deliberately naive: no indexes, no caching, so it can serve as the reference
the miners are tested against.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .model import StateInterval, relation
from .patterns import TemporalPattern


def iter_mappings(
    z: Sequence[StateInterval], p: TemporalPattern, first: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield every mapping (tuple of 0-based MSS positions) under which ``z``
    contains ``p``.  ``first`` pins the position of the first state."""
    k = len(p)
    n = len(z)
    chosen: list[int] = []

    def extend(i: int, lo: int, hi: int):
        if i == k:
            yield tuple(chosen)
            return
        var, sym = p.states[i]
        for q in range(lo, hi):
            e = z[q]
            if e.variable != var or e.symbol is not sym:
                continue
            if all(relation(z[chosen[a]], e) == p.rel(a, i) for a in range(i)):
                chosen.append(q)
                yield from extend(i + 1, q + 1, n)
                chosen.pop()

    if first is None:
        yield from extend(0, 0, n)
    elif 0 <= first < n:
        yield from extend(0, first, first + 1)


def contains(z: Sequence[StateInterval], p: TemporalPattern) -> bool:
    return next(iter_mappings(z, p), None) is not None


def count_occurrences(z: Sequence[StateInterval], p: TemporalPattern) -> int:
    return sum(1 for _ in iter_mappings(z, p))


def starting_positions(z: Sequence[StateInterval], p: TemporalPattern) -> list[int]:
    """Ascending positions ``i`` such that some valid mapping starts at ``i``."""
    return [i for i in range(len(z)) if next(iter_mappings(z, p, first=i), None) is not None]
