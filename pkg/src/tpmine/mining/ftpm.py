"""Baseline level-wise miner with vertical record-id lists."""

from __future__ import annotations

import logging

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
    verify_backtracking,
)
from .._validation import check_max_k, check_theta, check_time_limit

logger = logging.getLogger(__name__)


def find_size1_ftps(dataset: Dataset, theta: float) -> list[tuple[tuple, list[int]]]:
    """Frequent single-state raw patterns with their ascending record-id
    lists, in state order."""
    ids: dict = {}
    for rid, rec in enumerate(dataset.index):
        for code in rec.positions:
            ids.setdefault(code, []).append(rid)
    n_cls = len(dataset.classes)
    out = []
    for code in sorted(ids):
        rids = ids[code]
        if is_frequent(class_counts(rids, dataset.class_of, n_cls), dataset.class_sizes, theta):
            out.append((((code,), ""), rids))
    return out


def potential_ids(raw: tuple, ftp_index: dict) -> set | None:
    """Intersection of the id lists of all size-(k-1) subpatterns of the raw
    pattern; ``None`` when one of them is not frequent."""
    sets = subpattern_entries(raw, ftp_index)
    if sets is None:
        return None
    sets.sort(key=len)
    out = set(sets[0])
    for s in sets[1:]:
        out.intersection_update(s)
        if not out:
            break
    return out


def mine_ftpm(dataset: Dataset, theta: float, max_k: int | None = None, time_limit: float | None = None) -> MiningResult:
    """Breadth-first frequent temporal pattern mining with id lists.

    Candidates are pruned when a size-k subpattern is infrequent or when the
    potential records (the intersection of subpattern id lists) cannot reach
    the support threshold in any class.  Survivors are verified record by
    record with :func:`verify_backtracking`.
    """
    theta = check_theta(theta)
    max_k = check_max_k(max_k)
    time_limit = check_time_limit(time_limit)
    n_cls = len(dataset.classes)
    class_of = dataset.class_of
    sizes = dataset.class_sizes
    index = dataset.index

    size1 = find_size1_ftps(dataset, theta)
    result = MiningResult("ftpm", theta, max_k, list(dataset.classes), list(sizes))
    level_ids = {p: frozenset(ids) for p, ids in size1}
    singletons = [p for p, _ in size1]
    ftps = [(p, tuple(class_counts(ids, class_of, n_cls))) for p, ids in size1]
    mem = ENTRY_BYTES * sum(len(ids) for _, ids in size1)
    result.levels.append(LevelStats(1, len(dataset.states), 0, len(size1), 0.0, mem))
    result.memory_bytes = mem
    result.deepest_complete = 1 if size1 else 0

    watch = Stopwatch(time_limit)
    new = singletons
    k = 1
    while new and (max_k is None or k < max_k):
        t_level = watch.elapsed()
        n_cand = n_pruned = 0
        next_ids = {}
        level_ftps = []
        level_mem = 0
        interrupted = False
        for cand in raw_candidates(new, singletons):
            if watch.expired():
                interrupted = True
                break
            n_cand += 1
            pids = potential_ids(cand, level_ids)
            if pids is None or not is_frequent(class_counts(pids, class_of, n_cls), sizes, theta):
                n_pruned += 1
                continue
            codes, rels = cand
            cols = relation_columns(rels, k + 1)
            ids = sorted(rid for rid in pids if verify_backtracking(index[rid], codes, cols))
            sup = class_counts(ids, class_of, n_cls)
            if is_frequent(sup, sizes, theta):
                next_ids[cand] = frozenset(ids)
                level_ftps.append((cand, tuple(sup)))
                level_mem += ENTRY_BYTES * len(ids)
        if interrupted:
            result.complete = False
            logger.info("ftpm: time limit hit while mining size %d", k + 1)
            break
        k += 1
        result.levels.append(LevelStats(k, n_cand, n_pruned, len(level_ftps), watch.elapsed() - t_level, level_mem))
        ftps.extend(level_ftps)
        result.memory_bytes += level_mem
        result.deepest_complete = k
        level_ids = next_ids
        new = sorted(next_ids)
    result.mining_seconds = watch.elapsed()
    result.ftps = sort_ftps([(dataset.pattern(p), sup) for p, sup in ftps])
    return result


class FTPM(BaseTemporalMiner):
    """Frequent temporal pattern miner over vertical id lists.

    Parameters
    ----------
    theta : float, default=0.5
        Minimum per-class support fraction; a pattern is kept when it reaches
        ``theta * |D_y|`` records in at least one class ``y``.
    max_k : int or None, default=None
        Largest pattern size to mine.
    time_limit : float or None, default=None
        Wall-clock budget in seconds, checked between candidates.

    Attributes
    ----------
    result_ : MiningResult
    patterns_ : list of TemporalPattern
    supports_ : ndarray of shape (n_patterns, n_classes)
    classes_ : list
    """

    def _mine(self, dataset):
        return mine_ftpm(dataset, self.theta, self.max_k, self.time_limit)
