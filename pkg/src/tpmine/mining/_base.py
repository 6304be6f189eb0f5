"""Shared mining plumbing: datasets, results, the frequency test and the
estimator base class."""

from __future__ import annotations

import math
import time
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .._validation import (
    check_labels,
    check_max_k,
    check_mss_collection,
    check_theta,
    check_time_limit,
    class_sort_key,
)
from ..model import BEFORE, CO_OCCUR, MSS, State
from ..patterns import TemporalPattern, _relation_dropper, drop_relations, pattern_key, rel_index

# serialized width of one record id, position or index entry
ENTRY_BYTES = 4


class Dataset:
    """Labelled MSS records.

    Parameters
    ----------
    records : sequence of MSS
    labels : sequence, optional
        One hashable class label per record; all records share class ``0``
        when omitted.

    Notes
    -----
    The miners work on *raw* patterns, ``(codes, relations)`` tuples where
    ``codes`` index :attr:`states`; :meth:`raw` and :meth:`pattern` convert.
    """

    def __init__(self, records: Sequence[MSS], labels=None):
        self.records = check_mss_collection(records)
        self.labels = check_labels(labels, len(self.records))
        self.classes = sorted(set(self.labels), key=class_sort_key)
        cidx = {c: i for i, c in enumerate(self.classes)}
        self.class_of = [cidx[label] for label in self.labels]
        self.class_sizes = [0] * len(self.classes)
        for c in self.class_of:
            self.class_sizes[c] += 1
        observed = {State(e.variable, e.symbol) for z in self.records for e in z}
        self.states = sorted(observed, key=lambda s: (s.variable, s.symbol.ordinal))
        self.state_code = {s: i for i, s in enumerate(self.states)}
        self._index = None

    def __len__(self):
        return len(self.records)

    def concat(self, other: "Dataset") -> "Dataset":
        return Dataset(self.records + other.records, self.labels + other.labels)

    @property
    def index(self) -> list["RecordIndex"]:
        if self._index is None:
            self._index = [RecordIndex(z, self.state_code) for z in self.records]
        return self._index

    def raw(self, p: TemporalPattern) -> tuple | None:
        """Raw form of ``p``; ``None`` if it uses a state never observed."""
        try:
            return tuple(self.state_code[s] for s in p.states), p.relations
        except KeyError:
            return None

    def pattern(self, raw: tuple) -> TemporalPattern:
        codes, rels = raw
        return TemporalPattern._trusted(tuple(self.states[c] for c in codes), rels)


class RecordIndex:
    """Flat start/end arrays and per-state position lists of one MSS."""

    __slots__ = ("starts", "ends", "positions")

    def __init__(self, z: MSS, state_code: dict):
        self.starts = [e.start for e in z]
        self.ends = [e.end for e in z]
        self.positions: dict[int, list[int]] = {}
        for i, e in enumerate(z):
            self.positions.setdefault(state_code[State(e.variable, e.symbol)], []).append(i)


@lru_cache(maxsize=256)
def min_supports(class_sizes: tuple, theta: float) -> tuple:
    """Smallest integer support reaching ``theta * |D_y|`` in each class.

    The product is taken exactly on the decimal value of ``theta``, so
    ``0.7 * 10`` asks for 7 records rather than the 8 a binary float product
    would demand.  For integer supports this is the same test as comparing
    against the real-valued product.
    """
    t = Fraction(repr(float(theta)))
    return tuple(math.ceil(t * n) for n in class_sizes)


def is_frequent(supports: Sequence[int], class_sizes: Sequence[int], theta: float) -> bool:
    """True iff ``support_y >= theta * |D_y|`` for at least one class."""
    return any(s >= m for s, m in zip(supports, min_supports(tuple(class_sizes), theta)))


def class_counts(ids, class_of: Sequence[int], n_classes: int) -> list[int]:
    counts = [0] * n_classes
    for i in ids:
        counts[class_of[i]] += 1
    return counts


def raw_drop(raw: tuple, j: int) -> tuple:
    codes, rels = raw
    return codes[:j] + codes[j + 1:], drop_relations(rels, len(codes), j)


def subpattern_entries(raw: tuple, ftp_index: dict, first: int = 0) -> list | None:
    """Index entries of the drop-j subpatterns of ``raw`` for ``j >= first``,
    or ``None`` as soon as one is missing."""
    codes, rels = raw
    k = len(codes)
    out = []
    get = ftp_index.get
    for j in range(first, k):
        e = get((codes[:j] + codes[j + 1:], _relation_dropper(k, j)(rels)))
        if e is None:
            return None
        out.append(e)
    return out


def raw_candidates(new: Sequence[tuple], singletons: Sequence[tuple]):
    """Raw counterpart of :func:`~tpmine.patterns.create_candidates`."""
    rows: dict[int, list[str]] = {}
    for (s,), _ in singletons:
        for codes, rels in new:
            k = len(codes)
            vecs = rows.get(k)
            if vecs is None:
                vecs = rows[k] = [CO_OCCUR * a + BEFORE * (k - a) for a in range(k + 1)]
            states = (s,) + codes
            for v in vecs:
                yield states, v + rels


def relation_columns(relations: str, k: int) -> list[list[bool]]:
    """For each state ``j``, whether each earlier state ``a < j`` must finish
    before it."""
    return [[relations[rel_index(a, j, k)] == BEFORE for a in range(j)] for j in range(k)]


def verify_backtracking(rec: RecordIndex, codes: Sequence[int], cols) -> bool:
    """Depth-first containment test over the record's per-state positions.

    Relations to already placed states are checked as each state is placed;
    a failed co-occurrence ends the scan of that state early because later
    candidates start later still.
    """
    k = len(codes)
    plists = []
    for s in codes:
        pl = rec.positions.get(s)
        if pl is None:
            return False
        plists.append(pl)
    if k == 1:
        return True
    starts, ends = rec.starts, rec.ends
    chosen = [0] * k

    def place(i: int, lo: int) -> bool:
        pl = plists[i]
        col = cols[i]
        for q in pl[bisect_right(pl, lo):] if lo >= 0 else pl:
            sq = starts[q]
            ok = True
            for a in range(i):
                if (ends[chosen[a]] < sq) != col[a]:
                    ok = False
                    if not col[a]:
                        # needs co-occurrence, which only gets harder further right
                        return False
                    break
            if not ok:
                continue
            if i + 1 == k:
                return True
            chosen[i] = q
            if place(i + 1, q):
                return True
        return False

    return place(0, -1)


@dataclass
class LevelStats:
    size: int
    candidates: int
    pruned: int
    ftps: int
    seconds: float = 0.0
    memory_bytes: int = 0


@dataclass
class MiningResult:
    """Frequent temporal patterns with per-class supports and run statistics.

    ``ftps`` is sorted by (size, pattern key); supports are aligned with
    ``classes``.  ``complete`` is False when the time limit interrupted a
    level, in which case only levels up to ``deepest_complete`` are listed.
    """

    algorithm: str
    theta: float
    max_k: int | None
    classes: list
    class_sizes: list
    ftps: list = field(default_factory=list)
    levels: list = field(default_factory=list)
    memory_bytes: int = 0
    complete: bool = True
    deepest_complete: int = 0
    mining_seconds: float = 0.0
    evl: dict | None = None

    @property
    def patterns(self) -> list[TemporalPattern]:
        return [p for p, _ in self.ftps]

    def support_of(self, p: TemporalPattern) -> tuple | None:
        for q, s in self.ftps:
            if q == p:
                return s
        return None

    def canonical(self) -> list[tuple[str, tuple]]:
        """Sorted (pattern key, supports) pairs, used for equality verdicts."""
        return [(pattern_key(p), tuple(s)) for p, s in sort_ftps(self.ftps)]

    @property
    def max_size(self) -> int:
        return max((len(p) for p, _ in self.ftps), default=0)


def sort_ftps(ftps):
    return sorted(ftps, key=lambda t: (len(t[0]), pattern_key(t[0])))


class Stopwatch:
    def __init__(self, limit: float | None):
        self.limit = limit
        self.t0 = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self.t0

    def expired(self) -> bool:
        return self.limit is not None and self.elapsed() > self.limit


class BaseTemporalMiner(BaseEstimator):
    """Estimator front end shared by both miners.

    ``fit(X, y)`` takes a sequence of MSS records (or anything
    :class:`Dataset` accepts) plus class labels, and stores the mining result.
    """

    def __init__(self, theta=0.5, max_k=None, time_limit=None):
        self.theta = theta
        self.max_k = max_k
        self.time_limit = time_limit

    def _mine(self, dataset: Dataset) -> MiningResult:
        raise NotImplementedError

    def fit(self, X, y=None):
        check_theta(self.theta)
        check_max_k(self.max_k)
        check_time_limit(self.time_limit)
        dataset = X if isinstance(X, Dataset) and y is None else Dataset(X, y)
        self.result_ = self._mine(dataset)
        self.classes_ = list(self.result_.classes)
        self.patterns_ = self.result_.patterns
        self.supports_ = np.array(
            [s for _, s in self.result_.ftps], dtype=int
        ).reshape(len(self.result_.ftps), len(self.classes_))
        return self

    def fit_discover(self, X, y=None) -> list:
        """Fit and return the (pattern, supports) list."""
        return self.fit(X, y).result_.ftps

    @property
    def n_patterns_(self) -> int:
        check_is_fitted(self, "result_")
        return len(self.patterns_)
