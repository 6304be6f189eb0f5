"""Temporal patterns and the pattern algebra shared by both miners.

A pattern of size ``k`` holds ``k`` states and the upper triangle of its
relation matrix as a string over ``{"b", "c"}`` in row-major order
``(0,1), (0,2), ..., (0,k-1), (1,2), ..., (k-2,k-1)``.  Prepending a state
therefore only prepends one row to that string, which is what candidate
generation relies on.
"""

from __future__ import annotations

import re
from functools import lru_cache
from operator import itemgetter
from typing import Iterable, Iterator, Sequence

from .model import BEFORE, CO_OCCUR, State, Symbol

__all__ = [
    "TemporalPattern",
    "rel_index",
    "is_coherent",
    "drop_state",
    "parent",
    "subpatterns",
    "chain_length",
    "exposure",
    "create_candidates",
    "pattern_key",
    "parse_key",
]


def rel_index(i: int, j: int, k: int) -> int:
    """Offset of entry ``(i, j)``, ``i < j``, in a size-``k`` relation string."""
    return i * (2 * k - i - 1) // 2 + (j - i - 1)


def is_coherent(relations: str, k: int) -> bool:
    """True when every row is of the form ``c...cb...b``."""
    off = 0
    for i in range(k - 1):
        row = relations[off:off + k - i - 1]
        if "bc" in row:
            return False
        off += k - i - 1
    return True


class TemporalPattern:
    """Ordered states plus a pairwise before/co-occur relation matrix.

    Patterns are immutable, hashable and compare by value.

    Parameters
    ----------
    states : sequence of State or (variable, symbol) pairs
    relations : str
        Row-major upper triangle over ``{"b", "c"}``; ``""`` for size 1.
    """

    __slots__ = ("states", "relations", "_hash")

    def __init__(self, states: Iterable, relations: str = ""):
        st = []
        for s in states:
            var, sym = s
            if not isinstance(sym, Symbol):
                sym = Symbol.from_code(sym)
            st.append(State(str(var), sym))
        k = len(st)
        if k < 1:
            raise ValueError("a temporal pattern needs at least one state")
        if len(relations) != k * (k - 1) // 2:
            raise ValueError(
                f"size-{k} pattern needs {k * (k - 1) // 2} relations, got {len(relations)}"
            )
        if relations.strip(BEFORE + CO_OCCUR):
            raise ValueError(f"relations must be drawn from 'b'/'c', got {relations!r}")
        if not is_coherent(relations, k):
            raise ValueError(f"incoherent relation matrix {relations!r}")
        self._init(tuple(st), relations)

    def _init(self, states, relations):
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "relations", relations)
        object.__setattr__(self, "_hash", hash((states, relations)))

    @classmethod
    def _trusted(cls, states: tuple, relations: str) -> "TemporalPattern":
        # skips validation; callers guarantee coherence
        self = cls.__new__(cls)
        self._init(states, relations)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("TemporalPattern is immutable")

    def __len__(self):
        return len(self.states)

    @property
    def size(self) -> int:
        return len(self.states)

    def rel(self, i: int, j: int) -> str:
        """Relation between states ``i < j`` (0-based)."""
        return self.relations[rel_index(i, j, len(self.states))]

    def __eq__(self, other):
        if not isinstance(other, TemporalPattern):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.states == other.states
            and self.relations == other.relations
        )

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (TemporalPattern, (self.states, self.relations))

    @property
    def key(self) -> str:
        return pattern_key(self)

    def sort_key(self):
        return (len(self.states), pattern_key(self))

    def __repr__(self):
        return f"TemporalPattern({pattern_key(self)!r})"

    __str__ = lambda self: pattern_key(self)  # noqa: E731


@lru_cache(maxsize=None)
def _relation_dropper(k: int, j: int):
    """Callable mapping a size-k relation string to the one without state j."""
    if j == 0:
        off = k - 1
        return lambda r: r[off:]
    keep = [i for i in range(k) if i != j]
    idx = [rel_index(keep[a], keep[b], k) for a in range(k - 1) for b in range(a + 1, k - 1)]
    if not idx:
        return lambda r: ""
    if len(idx) == 1:
        i = idx[0]
        return lambda r: r[i]
    get = itemgetter(*idx)
    return lambda r: "".join(get(r))


def drop_relations(relations: str, k: int, j: int) -> str:
    """Relation string of a size-k pattern after removing state ``j``."""
    return _relation_dropper(k, j)(relations)


def drop_state(p: TemporalPattern, j: int) -> TemporalPattern:
    """Subpattern of ``p`` without state ``j`` (0-based)."""
    k = len(p.states)
    if k < 2:
        raise ValueError("cannot drop a state from a size-1 pattern")
    if not 0 <= j < k:
        raise IndexError(f"state index {j} out of range for size-{k} pattern")
    return TemporalPattern._trusted(p.states[:j] + p.states[j + 1:], _relation_dropper(k, j)(p.relations))


def parent(p: TemporalPattern) -> TemporalPattern:
    """The subpattern without the first state."""
    return drop_state(p, 0)


def subpatterns(p: TemporalPattern) -> list[TemporalPattern]:
    """All ``k`` drop-one subpatterns of a size-``k`` pattern, duplicates kept."""
    if len(p) < 2:
        raise ValueError("a size-1 pattern has no proper subpatterns of size k-1")
    return [drop_state(p, j) for j in range(len(p))]


def chain_length(p: TemporalPattern) -> int:
    """Size of the smallest non-empty prefix whose states are all before
    every remaining state."""
    return relation_chain_length(p.relations, len(p.states))


def relation_chain_length(relations: str, k: int) -> int:
    """:func:`chain_length` computed from a size-``k`` relation string."""
    for c in range(1, k):
        # coherent rows are c*b*, so row i is all-b from column c iff entry (i, c) is b
        if all(relations[rel_index(i, c, k)] == BEFORE for i in range(c)):
            return c
    return k


def exposure(p: TemporalPattern) -> int:
    """Number of leading states that verification must place explicitly."""
    return relation_exposure(p.relations, len(p.states))


def relation_exposure(relations: str, k: int) -> int:
    """:func:`exposure` computed from a size-``k`` relation string."""
    c = relation_chain_length(relations, k)
    return c + 1 if c < k else c


def create_candidates(
    new_ftps: Sequence[TemporalPattern], singletons: Sequence[TemporalPattern]
) -> Iterator[TemporalPattern]:
    """Coherent size-(k+1) candidates: every frequent state prepended to every
    size-k FTP with each first-row vector ``c^a b^(k-a)``, ``a = 0..k``.

    Ordered by singleton, then FTP, then ``a``.  Each candidate's parent is the
    FTP it was built from, so the output is duplicate-free.
    """
    for s in singletons:
        if len(s.states) != 1:
            raise ValueError(f"singleton expected, got size {len(s.states)}")
        state = s.states
        for p0 in new_ftps:
            k = len(p0.states)
            states = state + p0.states
            tail = p0.relations
            for a in range(k + 1):
                yield TemporalPattern._trusted(states, CO_OCCUR * a + BEFORE * (k - a) + tail)


_KEY_RE = re.compile(r"^<([^|<>]*)\|([bc]*)>$")
_RESERVED = set("<>|,=")


def pattern_key(p: TemporalPattern) -> str:
    """Canonical text form, e.g. ``<HR=N,BP=N,HR=L|cbc>``."""
    return "<" + ",".join(f"{s.variable}={s.symbol.value}" for s in p.states) + "|" + p.relations + ">"


def parse_key(key: str) -> TemporalPattern:
    """Inverse of :func:`pattern_key`."""
    m = _KEY_RE.match(key.strip())
    if m is None:
        raise ValueError(f"malformed pattern key {key!r}")
    states = []
    for item in m.group(1).split(","):
        var, sep, sym = item.rpartition("=")
        if not sep or not var:
            raise ValueError(f"malformed state {item!r} in pattern key {key!r}")
        states.append((var, Symbol.from_code(sym)))
    return TemporalPattern(states, m.group(2))


def check_variable_name(name: str) -> str:
    if not name or _RESERVED & set(name) or name != name.strip():
        raise ValueError(f"variable name {name!r} cannot be encoded in a pattern key")
    return name
