"""Seeded synthetic MSS datasets with an optionally planted pattern."""

from __future__ import annotations

import random

from .mining import Dataset
from .model import MSS, VALUE_ALPHABET, State, StateInterval
from .oracle import contains
from .patterns import TemporalPattern, check_variable_name, rel_index


class InfeasiblePlantError(ValueError):
    """The planted pattern cannot be realised under the generator's limits."""


def _fill(rng, symbols, lo, hi, left, right, count):
    """Up to ``count`` intervals tiling part of ticks ``[lo, hi]`` whose
    symbols alternate and differ from the neighbouring ``left``/``right``."""
    width = hi - lo + 1
    need = 1 if (left is not None and left is right) else 0
    n = max(need, min(count, width))
    two = len(symbols) == 2
    if two and left in symbols and right in symbols and n % 2 != need:
        # strict alternation between fixed neighbours fixes the parity
        n = n - 1 if n - 1 >= need else n + 1
    if n > width:
        raise InfeasiblePlantError("not enough ticks to separate planted intervals")
    if n == 0:
        return []
    if two and right in symbols:
        other = {symbols[0]: symbols[1], symbols[1]: symbols[0]}
        seq = [other[right]]
        while len(seq) < n:
            seq.append(other[seq[-1]])
        seq.reverse()
        if seq[0] is left:
            raise InfeasiblePlantError("alphabet too small to separate planted intervals")
    else:
        seq = []
        prev = left
        for i in range(n):
            banned = {prev, right} if i == n - 1 else {prev}
            choices = [s for s in symbols if s not in banned]
            if not choices:
                raise InfeasiblePlantError("alphabet too small to separate planted intervals")
            prev = rng.choice(choices)
            seq.append(prev)
    cuts = sorted(rng.sample(range(lo, hi + 1), n))
    bounds = cuts + [hi + 1]
    return [(sym, bounds[i], rng.randint(bounds[i], bounds[i + 1] - 1)) for i, sym in enumerate(seq)]


def random_pattern(rng: random.Random, size: int, variables, symbols) -> TemporalPattern:
    """A random pattern that :func:`realise` can embed: same-variable states
    are always related by *before*."""
    states = [State(rng.choice(variables), rng.choice(symbols)) for _ in range(size)]
    rels = []
    for i in range(size):
        nxt_same = next((j for j in range(i + 1, size) if states[j].variable == states[i].variable), size)
        last_co = rng.randint(i, nxt_same - 1)
        rels.extend("c" if j <= last_co else "b" for j in range(i + 1, size))
    return TemporalPattern(states, "".join(rels))


def realise(p: TemporalPattern, rng: random.Random, offset: int = 0, gap: int = 4):
    """Concrete intervals whose relations reproduce ``p``'s matrix.

    Starts are strictly increasing, ``gap`` ticks apart or more; state ``i``
    ends inside the gap after the last state it co-occurs with.
    """
    k = len(p)
    starts = []
    s = offset
    for _ in range(k):
        starts.append(s)
        s += gap + rng.randint(0, gap)
    out = []
    for i, st in enumerate(p.states):
        last = i
        while last + 1 < k and p.relations[rel_index(i, last + 1, k)] == "c":
            last += 1
        for j in range(i + 1, k):
            if p.states[j].variable == st.variable and p.relations[rel_index(i, j, k)] == "c":
                raise InfeasiblePlantError(
                    f"states {i} and {j} share variable {st.variable!r} but must co-occur"
                )
        hi = starts[last + 1] - 3 if last + 1 < k else starts[last] + gap
        end = rng.randint(starts[last], max(starts[last], hi))
        out.append(StateInterval(st.variable, st.symbol, starts[i], end))
    return out


def _record(rng, variables, symbols, n_intervals, horizon, planted=None):
    fixed = {v: [] for v in variables}
    for e in planted or ():
        fixed[e.variable].append(e)
    n_noise = max(0, n_intervals - len(planted or ()))
    share = [0] * len(variables)
    for _ in range(n_noise):
        share[rng.randrange(len(variables))] += 1
    intervals = []
    for v, count in zip(variables, share):
        anchors = fixed[v]
        segments = []
        edges = [(-1, None)] + [(e.start, e) for e in anchors] + [(horizon, None)]
        # split the noise budget over the gaps around the anchors
        n_gaps = len(edges) - 1
        per_gap = [0] * n_gaps
        for _ in range(count):
            per_gap[rng.randrange(n_gaps)] += 1
        for g in range(n_gaps):
            left_e = edges[g][1]
            right_e = edges[g + 1][1]
            lo = left_e.end + 1 if left_e is not None else 0
            hi = (right_e.start - 1) if right_e is not None else horizon - 1
            if right_e is None and left_e is not None:
                hi = max(hi, lo + per_gap[g])
            left_sym = left_e.symbol if left_e is not None else None
            right_sym = right_e.symbol if right_e is not None else None
            if hi < lo:
                if left_sym is not None and left_sym is right_sym:
                    raise InfeasiblePlantError("no room between same-symbol planted intervals")
                continue
            for sym, s, e in _fill(rng, symbols, lo, hi, left_sym, right_sym, per_gap[g]):
                segments.append(StateInterval(v, sym, s, e))
        intervals.extend(segments)
        intervals.extend(anchors)
    intervals.sort(key=lambda e: (e.start, e.end, e.variable, e.symbol.ordinal))
    return MSS(intervals)


def generate_synthetic(
    seed: int,
    n_records: int = 20,
    n_variables: int = 3,
    alphabet_size: int = 3,
    intervals_per_record: int = 12,
    planted: TemporalPattern | None = None,
    plant_rate: float = 0.0,
    n_classes: int = 2,
    plant_class: int = 0,
) -> Dataset:
    """Pseudo-random labelled MSS dataset.

    Records are assigned to classes round-robin.  Variables are named
    ``v0, v1, ...`` over the first ``alphabet_size`` value symbols.  The
    ``planted`` pattern is embedded in ``round(plant_rate * n)`` records of
    class ``plant_class`` (the first ones of that class), and every embedding
    is confirmed with the containment oracle.  Equal seeds give equal
    datasets.
    """
    if not 0.0 <= plant_rate <= 1.0:
        raise ValueError(f"plant_rate must lie in [0, 1], got {plant_rate}")
    if not 2 <= alphabet_size <= len(VALUE_ALPHABET):
        raise ValueError(f"alphabet_size must lie in [2, {len(VALUE_ALPHABET)}]")
    if n_variables < 1 or n_records < 0 or n_classes < 1 or intervals_per_record < 1:
        raise ValueError("n_variables, n_classes and intervals_per_record must be positive")
    if not 0 <= plant_class < n_classes:
        raise ValueError(f"plant_class {plant_class} outside 0..{n_classes - 1}")
    rng = random.Random(seed)
    variables = [f"v{i}" for i in range(n_variables)]
    symbols = list(VALUE_ALPHABET[:alphabet_size])
    labels = [i % n_classes for i in range(n_records)]
    horizon = 3 * intervals_per_record
    plant_ids: set[int] = set()
    if planted is not None and plant_rate > 0:
        members = [i for i, y in enumerate(labels) if y == plant_class]
        plant_ids = set(members[: round(plant_rate * len(members))])
        for s in planted.states:
            check_variable_name(s.variable)
        if len(planted) > intervals_per_record:
            raise InfeasiblePlantError(
                f"size-{len(planted)} pattern does not fit in {intervals_per_record} intervals"
            )
    records = []
    for i in range(n_records):
        if i in plant_ids:
            inst = realise(planted, rng, offset=rng.randint(1, intervals_per_record))
            span = inst[-1].end + 1 if inst else 0
            z = _record(
                rng,
                sorted(set(variables) | {s.variable for s in planted.states}),
                symbols,
                intervals_per_record,
                max(horizon, span + 2),
                inst,
            )
            if not contains(z, planted):
                raise InfeasiblePlantError("planted pattern not found after embedding")
        else:
            z = _record(rng, variables, symbols, intervals_per_record, horizon)
        records.append(z)
    return Dataset(records, labels)
