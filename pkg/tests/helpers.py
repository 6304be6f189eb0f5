"""Test-side fixtures and an independent brute-force oracle.

The oracle here enumerates position combinations with itertools instead of
backtracking, so it shares no code with ``tpmine.oracle``.
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path

from tpmine.io import load_mss
from tpmine.model import MSS, VALUE_ALPHABET, State, StateInterval, Symbol
from tpmine.patterns import TemporalPattern, parse_key

DATA = Path(__file__).parent / "data"
EXAMPLE = DATA / "worked_example.json"
ITALY_TRAIN = DATA / "ItalyPowerDemand_TRAIN.tsv"

# worked-example patterns
P = parse_key("<HR=N,BP=N,HR=L|cbc>")
P0 = parse_key("<BP=N,HR=L|c>")
P00 = parse_key("<HR=L|>")
P1 = parse_key("<HR=N,BP=N|c>")
P2 = parse_key("<HR=N,HR=L|b>")


def example_dataset():
    return load_mss(EXAMPLE)


def example_record() -> MSS:
    return example_dataset().records[0]


def _rel(a: StateInterval, b: StateInterval) -> str:
    return "b" if a.end < b.start else "c"


def _matches(z, p: TemporalPattern, combo) -> bool:
    k = len(p)
    for i, q in enumerate(combo):
        e = z[q]
        if (e.variable, e.symbol) != tuple(p.states[i]):
            return False
    r = 0
    for i in range(k):
        for j in range(i + 1, k):
            if _rel(z[combo[i]], z[combo[j]]) != p.relations[r]:
                return False
            r += 1
    return True


def brute_mappings(z, p: TemporalPattern):
    return [c for c in itertools.combinations(range(len(z)), len(p)) if _matches(z, p, c)]


def brute_contains(z, p: TemporalPattern) -> bool:
    return any(_matches(z, p, c) for c in itertools.combinations(range(len(z)), len(p)))


def brute_starts(z, p: TemporalPattern) -> list[int]:
    return sorted({c[0] for c in brute_mappings(z, p)})


def pattern_at(z, combo) -> TemporalPattern:
    """The pattern read off an increasing tuple of positions of ``z``."""
    states = [State(z[q].variable, z[q].symbol) for q in combo]
    rels = "".join(
        _rel(z[combo[i]], z[combo[j]]) for i in range(len(combo)) for j in range(i + 1, len(combo))
    )
    return TemporalPattern(states, rels)


def coherent_relations(k: int):
    """Every coherent relation string of a size-k pattern."""
    rows = [[("c" * a + "b" * (k - 1 - i - a)) for a in range(k - i)] for i in range(k - 1)]
    for combo in itertools.product(*rows):
        yield "".join(combo)


def all_coherent_patterns(states, k: int):
    rels = list(coherent_relations(k))
    for st in itertools.product(states, repeat=k):
        for r in rels:
            yield TemporalPattern(st, r)


def brute_mine(dataset, theta: float, max_k: int) -> set[tuple[str, tuple]]:
    """All coherent patterns up to ``max_k`` over the observed states that are
    frequent in some class, as (key, supports) pairs."""
    states = sorted({State(e.variable, e.symbol) for z in dataset.records for e in z},
                    key=lambda s: (s.variable, s.symbol.ordinal))
    cidx = {c: i for i, c in enumerate(dataset.classes)}
    sizes = [0] * len(dataset.classes)
    for y in dataset.labels:
        sizes[cidx[y]] += 1
    out = set()
    for k in range(1, max_k + 1):
        for p in all_coherent_patterns(states, k):
            sup = [0] * len(sizes)
            for z, y in zip(dataset.records, dataset.labels):
                if brute_contains(z, p):
                    sup[cidx[y]] += 1
            if any(s >= theta * n for s, n in zip(sup, sizes)):
                out.add((p.key, tuple(sup)))
    return out


def random_mss(rng: random.Random, n_intervals: int, n_variables: int = 2, alphabet: int = 3,
               max_gap: int = 3, max_len: int = 4) -> MSS:
    """Random valid MSS: per variable, alternating symbols and strictly
    separated intervals."""
    symbols = list(VALUE_ALPHABET[:alphabet])
    counts = [0] * n_variables
    for _ in range(n_intervals):
        counts[rng.randrange(n_variables)] += 1
    out = []
    for v, n in enumerate(counts):
        t = rng.randint(0, max_gap)
        prev: Symbol | None = None
        for _ in range(n):
            sym = rng.choice([s for s in symbols if s is not prev])
            end = t + rng.randint(0, max_len)
            out.append(StateInterval(f"x{v}", sym, t, end))
            prev = sym
            t = end + 1 + rng.randint(0, max_gap)
    out.sort(key=lambda e: (e.start, e.end, e.variable, e.symbol.ordinal))
    return MSS(out)


def random_pattern(rng: random.Random, k: int, states) -> TemporalPattern:
    rels = []
    for i in range(k - 1):
        a = rng.randint(0, k - 1 - i)
        rels.append("c" * a + "b" * (k - 1 - i - a))
    return TemporalPattern([rng.choice(states) for _ in range(k)], "".join(rels))
