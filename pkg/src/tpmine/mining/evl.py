"""Level-wise miner with Extended Vertical Lists.

Every frequent pattern keeps, per record, the ascending positions where it
starts (``pos``) and, for each of them, an index into its parent's ``pos``
list for the same record (``ind``).  A candidate's potential starts are the
intersection of the starts of its drop-j subpatterns (j >= 1, the ones that
share its first state); verification then walks down the chain of parents
through the ``ind`` links, placing only as many states as the candidate's
exposure requires.
"""

from __future__ import annotations

import logging
from bisect import bisect_right

from .._validation import check_max_k, check_theta, check_time_limit
from ..patterns import pattern_key, relation_exposure
from ._base import (
    ENTRY_BYTES,
    BaseTemporalMiner,
    Dataset,
    LevelStats,
    MiningResult,
    Stopwatch,
    class_counts,
    is_frequent,
    raw_candidates,
    subpattern_entries,
    relation_columns,
    sort_ftps,
)

logger = logging.getLogger(__name__)


class ExtendedVerticalList:
    """EVL of one pattern.

    Attributes
    ----------
    raw : tuple
        The pattern as ``(state codes, relations)`` of its :class:`Dataset`.
    pattern : TemporalPattern or None
        Materialised pattern; filled in for EVLs handed out in results.
    parent : ExtendedVerticalList or None
        EVL of the pattern without its first state; kept as a reference so
        verification can walk the whole parent chain after the level index
        that held it has been released.
    entries : dict
        Record id to ``(pos, ind)`` lists; records without a start are absent.
    """

    __slots__ = ("raw", "pattern", "parent", "entries", "supports")

    def __init__(self, raw: tuple, parent: "ExtendedVerticalList | None", entries: dict):
        self.raw = raw
        self.pattern = None
        self.parent = parent
        self.entries = entries
        self.supports = None

    @property
    def ids(self) -> list[int]:
        return sorted(self.entries)

    def pos(self, rid: int) -> list[int]:
        e = self.entries.get(rid)
        return list(e[0]) if e else []

    def ind(self, rid: int) -> list[int]:
        e = self.entries.get(rid)
        return list(e[1]) if e else []

    def n_entries(self) -> int:
        return len(self.entries) + sum(len(p) + len(i) for p, i in self.entries.values())

    def __repr__(self):
        label = pattern_key(self.pattern) if self.pattern is not None else repr(self.raw)
        return f"ExtendedVerticalList({label}, {len(self.entries)} records)"


def evl_size1(dataset: Dataset) -> dict[tuple, ExtendedVerticalList]:
    """EVLs of every observed single-state raw pattern (``ind`` left empty)."""
    out: dict = {}
    for rid, rec in enumerate(dataset.index):
        for code, positions in rec.positions.items():
            p = ((code,), "")
            evl = out.get(p)
            if evl is None:
                evl = out[p] = ExtendedVerticalList(p, None, {})
            evl.entries[rid] = (list(positions), [])
    return out


def evl_memory_estimate(evls) -> int:
    """Bytes needed to serialise the given EVLs: one fixed-width slot per
    record id, position and parent index."""
    return ENTRY_BYTES * sum(e.n_entries() for e in evls)


def find_potential_positions_and_indices(
    raw: tuple,
    ftp_index: dict,
    class_of,
    class_sizes,
    theta: float,
) -> ExtendedVerticalList | None:
    """Unverified EVL of raw candidate ``raw``, or ``None`` when it can be
    discarded.

    Potential records intersect the id lists of all size-k subpatterns.  On
    each of them the potential starts intersect the starts of the drop-j
    subpatterns for j >= 1 (a multiset; duplicates are harmless), and every
    start is linked to the first parent start to its right.  Starts without
    one are dropped.
    """
    ordered = subpattern_entries(raw, ftp_index)
    if ordered is None:
        return None
    par = ordered[0]
    subs = ordered[1:]
    n_cls = len(class_sizes)
    ordered.sort(key=lambda e: len(e.entries))
    pids = set(ordered[0].entries)
    for e in ordered[1:]:
        pids.intersection_update(e.entries)
        if not pids:
            break
    if not is_frequent(class_counts(pids, class_of, n_cls), class_sizes, theta):
        return None
    entries = {}
    for rid in sorted(pids):
        first, *rest = [s.entries[rid][0] for s in subs]
        cand = sorted(set(first).intersection(*rest)) if rest else first
        parent_pos = par.entries[rid][0]
        # a start needs some parent start strictly to its right
        last = parent_pos[-1]
        pos = [q for q in cand if q < last]
        if pos:
            entries[rid] = (pos, [bisect_right(parent_pos, q) for q in pos])
    if not is_frequent(class_counts(entries, class_of, n_cls), class_sizes, theta):
        return None
    return ExtendedVerticalList(raw, par, entries)


def search(level_evl, rid, start, chosen, cols, depth, remaining, starts, ends) -> int:
    """Place candidate state ``depth`` at a start of ``level_evl`` (the
    candidate's suffix from ``depth`` on), scanning its ``pos`` list from
    ``start``.

    A position is accepted when its relations to every already ``chosen``
    position match the candidate's matrix.  With ``remaining`` placements
    left after it, the search recurses into the parent EVL at the accepted
    entry's ``ind`` link and backtracks on failure.

    Returns the index of the first entry of this level from which the whole
    placement succeeds, or -1.
    """
    pos, ind = level_evl.entries[rid]
    col = cols[depth]
    n_chosen = len(chosen)
    for idx in range(start, len(pos)):
        q = pos[idx]
        sq = starts[q]
        ok = True
        for a in range(n_chosen):
            if (ends[chosen[a]] < sq) != col[a]:
                if not col[a]:
                    # a required co-occurrence fails for every later start too
                    return -1
                ok = False
                break
        if not ok:
            continue
        if remaining == 1:
            return idx
        chosen.append(q)
        r = search(level_evl.parent, rid, ind[idx], chosen, cols, depth + 1, remaining - 1, starts, ends)
        chosen.pop()
        if r >= 0:
            return idx
    return -1


def verify_candidate(evl: ExtendedVerticalList, index) -> None:
    """Keep only verified starts in ``evl`` and advance each ``ind`` to the
    first parent entry from which verification succeeds."""
    codes, rels = evl.raw
    k = len(codes)
    cols = relation_columns(rels, k)
    remaining = relation_exposure(rels, k) - 1
    par = evl.parent
    verified = {}
    for rid, (pos, ind) in evl.entries.items():
        rec = index[rid]
        new_pos, new_ind = [], []
        for q, j in zip(pos, ind):
            r = search(par, rid, j, [q], cols, 1, remaining, rec.starts, rec.ends)
            if r >= 0:
                new_pos.append(q)
                new_ind.append(r)
        if new_pos:
            verified[rid] = (new_pos, new_ind)
    evl.entries = verified


def mine_evl(
    dataset: Dataset,
    theta: float,
    max_k: int | None = None,
    time_limit: float | None = None,
    retain_evl: bool = False,
) -> MiningResult:
    """Breadth-first frequent temporal pattern mining with EVLs.

    Returns the same patterns and supports as
    :func:`~tpmine.mining.ftpm.mine_ftpm`.  With ``retain_evl`` the EVL of
    every reported pattern is kept in ``result.evl``, keyed by pattern.
    """
    theta = check_theta(theta)
    max_k = check_max_k(max_k)
    time_limit = check_time_limit(time_limit)
    n_cls = len(dataset.classes)
    class_of = dataset.class_of
    sizes = dataset.class_sizes
    index = dataset.index

    all1 = evl_size1(dataset)
    level_index = {}
    for p, e in all1.items():
        sup = class_counts(e.entries, class_of, n_cls)
        if is_frequent(sup, sizes, theta):
            e.supports = tuple(sup)
            level_index[p] = e
    singletons = sorted(level_index)
    reported = [level_index[p] for p in singletons]

    result = MiningResult("evl", theta, max_k, list(dataset.classes), list(sizes))
    mem = evl_memory_estimate(level_index.values())
    result.levels.append(LevelStats(1, len(all1), 0, len(singletons), 0.0, mem))
    result.memory_bytes = mem
    result.deepest_complete = 1 if singletons else 0

    watch = Stopwatch(time_limit)
    new = singletons
    k = 1
    while new and (max_k is None or k < max_k):
        t_level = watch.elapsed()
        n_cand = n_pruned = 0
        next_index = {}
        interrupted = False
        for cand in raw_candidates(new, singletons):
            if watch.expired():
                interrupted = True
                break
            n_cand += 1
            evl = find_potential_positions_and_indices(cand, level_index, class_of, sizes, theta)
            if evl is None:
                n_pruned += 1
                continue
            verify_candidate(evl, index)
            sup = class_counts(evl.entries, class_of, n_cls)
            if is_frequent(sup, sizes, theta):
                evl.supports = tuple(sup)
                next_index[cand] = evl
        if interrupted:
            result.complete = False
            logger.info("evl: time limit hit while mining size %d", k + 1)
            break
        k += 1
        level_mem = evl_memory_estimate(next_index.values())
        result.levels.append(LevelStats(k, n_cand, n_pruned, len(next_index), watch.elapsed() - t_level, level_mem))
        result.memory_bytes += level_mem
        result.deepest_complete = k
        new = sorted(next_index)
        reported.extend(next_index.values())
        # size-(k-1) EVLs stay reachable through parent links only
        level_index = next_index
    result.mining_seconds = watch.elapsed()
    for e in reported:
        e.pattern = dataset.pattern(e.raw)
    result.ftps = sort_ftps([(e.pattern, e.supports) for e in reported])
    result.evl = {e.pattern: e for e in reported} if retain_evl else None
    return result


class FTPMwEVL(BaseTemporalMiner):
    """Frequent temporal pattern miner over Extended Vertical Lists.

    Parameters
    ----------
    theta : float, default=0.5
        Minimum per-class support fraction.
    max_k : int or None, default=None
        Largest pattern size to mine.
    time_limit : float or None, default=None
        Wall-clock budget in seconds, checked between candidates.
    retain_evl : bool, default=False
        Keep every reported pattern's EVL in ``result_.evl``.

    Attributes
    ----------
    result_ : MiningResult
    patterns_ : list of TemporalPattern
    supports_ : ndarray of shape (n_patterns, n_classes)
    classes_ : list
    """

    def __init__(self, theta=0.5, max_k=None, time_limit=None, retain_evl=False):
        super().__init__(theta=theta, max_k=max_k, time_limit=time_limit)
        self.retain_evl = retain_evl

    def _mine(self, dataset):
        return mine_evl(dataset, self.theta, self.max_k, self.time_limit, self.retain_evl)
