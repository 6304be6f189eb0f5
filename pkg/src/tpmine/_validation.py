"""Input validation helpers shared by the estimators and the harness."""

from __future__ import annotations

import numbers

import numpy as np

from .model import MSS, StateInterval


def check_theta(theta) -> float:
    if isinstance(theta, bool) or not isinstance(theta, numbers.Real):
        raise TypeError(f"theta must be a real number, got {type(theta).__name__}")
    theta = float(theta)
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    return theta


def check_max_k(max_k) -> int | None:
    if max_k is None:
        return None
    if isinstance(max_k, bool) or not isinstance(max_k, numbers.Integral):
        raise TypeError(f"max_k must be a positive integer or None, got {max_k!r}")
    if max_k < 1:
        raise ValueError(f"max_k must be >= 1, got {max_k}")
    return int(max_k)


def check_time_limit(time_limit) -> float | None:
    if time_limit is None:
        return None
    time_limit = float(time_limit)
    if not time_limit > 0:
        raise ValueError(f"time_limit must be positive, got {time_limit}")
    return time_limit


def check_mss_collection(X) -> list[MSS]:
    """Coerce ``X`` to a list of validated :class:`MSS` records."""
    if isinstance(X, MSS):
        raise TypeError("expected a collection of MSS records, got a single MSS")
    out = []
    for i, z in enumerate(X):
        if isinstance(z, MSS):
            out.append(z)
            continue
        try:
            out.append(MSS(tuple(StateInterval(*e) if not isinstance(e, StateInterval) else e for e in z)))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"record {i}: {exc}") from exc
    return out


def class_sort_key(label):
    try:
        return (0, float(label), str(label))
    except (TypeError, ValueError):
        return (1, 0.0, str(label))


def check_labels(y, n_records: int) -> list:
    if y is None:
        return [0] * n_records
    y = list(np.asarray(y).tolist()) if isinstance(y, np.ndarray) else list(y)
    if len(y) != n_records:
        raise ValueError(f"got {len(y)} labels for {n_records} records")
    for label in y:
        hash(label)
    return y


def check_series_collection(X) -> list[list]:
    """Coerce numeric input to records of :class:`~tpmine.abstraction.RawSeries`.

    Accepts a 2-D array ``(n_records, n_ticks)`` (one variable, named ``s``),
    a 3-D array ``(n_records, n_variables, n_ticks)`` (variables ``v0``,
    ``v1``, ...), or a sequence of records each being a sequence of
    ``RawSeries``.
    """
    from .abstraction import RawSeries, raw_series

    if isinstance(X, np.ndarray) or (
        isinstance(X, (list, tuple)) and X and not isinstance(X[0], (list, tuple, RawSeries))
    ):
        X = np.asarray(X, dtype=float)
    if isinstance(X, np.ndarray):
        if X.ndim == 2:
            return [[raw_series("s", row)] for row in X]
        if X.ndim == 3:
            return [[raw_series(f"v{j}", ch) for j, ch in enumerate(rec)] for rec in X]
        raise ValueError(f"expected a 2-D or 3-D array, got shape {X.shape}")
    records = []
    for i, rec in enumerate(X):
        if isinstance(rec, RawSeries):
            rec = [rec]
        rec = list(rec)
        if rec and not isinstance(rec[0], RawSeries):
            records.append([raw_series("s", rec)])
            continue
        names = [s.variable for s in rec]
        if len(set(names)) != len(names):
            raise ValueError(f"record {i}: duplicate variable names {names}")
        records.append(rec)
    return records
