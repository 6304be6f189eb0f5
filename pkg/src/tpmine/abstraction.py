"""Temporal abstraction: numeric series to state-interval sequences.

Two abstractions are provided.  Value abstraction bands every sample with
percentile thresholds pooled per variable over the whole dataset.  Trend
abstraction segments a series bottom-up into linear pieces and labels each
piece by its slope.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_series_collection
from .model import MSS, StateInterval, Symbol

DEFAULT_PERCENTILES = (0.1, 0.25, 0.75, 0.9)
# about 8 samples per segment on z-normalised series of length 24
DEFAULT_SEG_MAX_ERROR = 0.3
ABSTRACTIONS = ("value", "trend")


class RawSeries(NamedTuple):
    """One numeric variable of one record: strictly increasing integer ticks
    and the sample values observed at them."""

    variable: str
    ticks: tuple
    values: tuple


def raw_series(variable: str, values: Sequence[float], ticks: Sequence[int] | None = None) -> RawSeries:
    values = tuple(float(v) for v in values)
    if not values:
        raise ValueError(f"series {variable!r} has no samples")
    if ticks is None:
        ticks = tuple(range(len(values)))
    else:
        ticks = tuple(int(t) for t in ticks)
        if len(ticks) != len(values):
            raise ValueError(f"series {variable!r}: {len(ticks)} ticks for {len(values)} values")
        if any(b <= a for a, b in zip(ticks, ticks[1:])):
            raise ValueError(f"series {variable!r}: ticks must be strictly increasing")
    if not all(math.isfinite(v) for v in values):
        raise ValueError(f"series {variable!r} contains non-finite values")
    return RawSeries(str(variable), ticks, values)


class PercentileThresholds(NamedTuple):
    very_low: float
    low: float
    high: float
    very_high: float


def nearest_rank(sorted_values: Sequence[float], q: float) -> float:
    """Nearest-rank percentile: the smallest value with at least ``q`` of the
    population at or below it."""
    n = len(sorted_values)
    rank = math.ceil(Fraction(str(q)) * n)
    return sorted_values[min(max(rank, 1), n) - 1]


def compute_thresholds(values: Iterable[float], percentiles=DEFAULT_PERCENTILES) -> PercentileThresholds:
    pooled = sorted(float(v) for v in values)
    if not pooled:
        raise ValueError("cannot compute thresholds of an empty population")
    if len(percentiles) != 4 or list(percentiles) != sorted(percentiles):
        raise ValueError(f"need four non-decreasing percentiles, got {percentiles!r}")
    if not all(0.0 <= q <= 1.0 for q in percentiles):
        raise ValueError(f"percentiles must lie in [0, 1], got {percentiles!r}")
    return PercentileThresholds(*(nearest_rank(pooled, q) for q in percentiles))


def band(v: float, t: PercentileThresholds) -> Symbol:
    if v < t.very_low:
        return Symbol.VERY_LOW
    if v < t.low:
        return Symbol.LOW
    if v <= t.high:
        return Symbol.NORMAL
    if v <= t.very_high:
        return Symbol.HIGH
    return Symbol.VERY_HIGH


def _runs(variable: str, ticks: Sequence[int], labels: Sequence[Symbol]) -> list[StateInterval]:
    out = []
    first = 0
    for i in range(1, len(labels) + 1):
        if i == len(labels) or labels[i] is not labels[first]:
            out.append(StateInterval(variable, labels[first], ticks[first], ticks[i - 1]))
            first = i
    return out


def value_abstract(series: RawSeries, thresholds: PercentileThresholds, variable: str | None = None) -> list[StateInterval]:
    """Band each sample and merge maximal runs of equal symbols."""
    labels = [band(v, thresholds) for v in series.values]
    return _runs(variable or series.variable, series.ticks, labels)


def _fit_line(t: np.ndarray, v: np.ndarray) -> tuple[float, float]:
    """Least-squares (slope, residual sum of squares); exact-fit residuals
    below rounding noise are reported as 0."""
    if len(t) < 2:
        return 0.0, 0.0
    dt = t - t.mean()
    dv = v - v.mean()
    stt = float(dt @ dt)
    stv = float(dt @ dv)
    svv = float(dv @ dv)
    slope = stv / stt
    ssr = svv - stv * slope
    if ssr <= 1e-9 * svv or ssr <= 1e-300:
        ssr = 0.0
    return slope, ssr


def bottom_up_segments(ticks: Sequence[int], values: Sequence[float], max_error: float) -> list[tuple[int, int]]:
    """Bottom-up piecewise-linear segmentation.

    Starts from single samples and repeatedly merges the adjacent pair of
    segments whose merged least-squares residual is smallest (leftmost on
    ties), as long as that residual stays within ``max_error`` times the
    merged segment length.

    Returns
    -------
    list of (first, last)
        Inclusive sample-index ranges; disjoint and covering all samples.
    """
    if max_error < 0:
        raise ValueError(f"max_error must be >= 0, got {max_error}")
    t = np.asarray(ticks, dtype=float)
    v = np.asarray(values, dtype=float)
    n = len(v)
    if n == 0:
        return []
    lo = list(range(n))
    hi = list(range(n))
    nxt = list(range(1, n)) + [-1]
    prv = [-1] + list(range(n - 1))
    alive = [True] * n
    version = [0] * n

    def cost(a: int) -> float:
        b = nxt[a]
        return _fit_line(t[lo[a]:hi[b] + 1], v[lo[a]:hi[b] + 1])[1]

    heap = [(cost(a), a, 0) for a in range(n - 1)]
    heapq.heapify(heap)
    while heap:
        c, a, ver = heapq.heappop(heap)
        if not alive[a] or ver != version[a] or nxt[a] < 0:
            continue
        b = nxt[a]
        if c > max_error * (hi[b] - lo[a] + 1):
            # costs only grow past the budget for this pair; keep scanning others
            continue
        hi[a] = hi[b]
        alive[b] = False
        nxt[a] = nxt[b]
        if nxt[b] >= 0:
            prv[nxt[b]] = a
        version[a] += 1
        if nxt[a] >= 0:
            heapq.heappush(heap, (cost(a), a, version[a]))
        p = prv[a]
        if p >= 0:
            version[p] += 1
            heapq.heappush(heap, (cost(p), p, version[p]))
    out = []
    a = 0
    while a >= 0:
        out.append((lo[a], hi[a]))
        a = nxt[a]
    return out


def slope_symbol(slope: float, steady_slope: float = 0.0) -> Symbol:
    if slope > steady_slope:
        return Symbol.INCREASING
    if slope < -steady_slope:
        return Symbol.DECREASING
    return Symbol.STEADY


def trend_abstract(
    series: RawSeries,
    max_error: float = DEFAULT_SEG_MAX_ERROR,
    steady_slope: float = 0.0,
    variable: str | None = None,
) -> list[StateInterval]:
    """Segment, label segments by slope, merge equal neighbours."""
    if steady_slope < 0:
        raise ValueError(f"steady_slope must be >= 0, got {steady_slope}")
    t = np.asarray(series.ticks, dtype=float)
    v = np.asarray(series.values, dtype=float)
    labels = [Symbol.STEADY] * len(v)
    for first, last in bottom_up_segments(series.ticks, series.values, max_error):
        slope, _ = _fit_line(t[first:last + 1], v[first:last + 1])
        sym = slope_symbol(slope, steady_slope)
        labels[first:last + 1] = [sym] * (last - first + 1)
    return _runs(variable or series.variable, series.ticks, labels)


def _mss_order(e: StateInterval):
    return (e.start, e.end, e.variable, e.symbol.ordinal)


def build_mss(sequences: Iterable[Sequence[StateInterval]]) -> MSS:
    """Merge per-variable interval sequences into one MSS ordered by
    (start, end, variable, symbol)."""
    merged = sorted((e for seq in sequences for e in seq), key=_mss_order)
    seen = set()
    for e in merged:
        if (e.variable, e.start) in seen:
            raise RuntimeError(f"duplicate interval start for {e.variable!r} at tick {e.start}")
        seen.add((e.variable, e.start))
    return MSS(merged)


class TemporalAbstraction(TransformerMixin, BaseEstimator):
    """Turn multivariate numeric records into MSSs.

    Parameters
    ----------
    abstractions : tuple of {"value", "trend"}, default=("value", "trend")
        Abstractions to apply to every input variable.  Output variables are
        named ``<name>.val`` and ``<name>.trend``.
    percentiles : tuple of 4 floats, default=(0.1, 0.25, 0.75, 0.9)
        Nearest-rank percentiles for the value bands, pooled per variable over
        all records seen in ``fit``.
    seg_max_error : float, default=0.3
        Per-sample residual budget of the bottom-up segmentation.
    steady_slope : float, default=0.0
        Slopes with magnitude at most this are labelled steady.

    Attributes
    ----------
    thresholds_ : dict
        Variable name to :class:`PercentileThresholds`.
    """

    def __init__(
        self,
        abstractions=ABSTRACTIONS,
        percentiles=DEFAULT_PERCENTILES,
        seg_max_error=DEFAULT_SEG_MAX_ERROR,
        steady_slope=0.0,
    ):
        self.abstractions = abstractions
        self.percentiles = percentiles
        self.seg_max_error = seg_max_error
        self.steady_slope = steady_slope

    def _check_params(self):
        abstractions = tuple(self.abstractions)
        bad = set(abstractions) - set(ABSTRACTIONS)
        if bad or not abstractions:
            raise ValueError(f"abstractions must be a non-empty subset of {ABSTRACTIONS}, got {abstractions}")
        if self.seg_max_error < 0 or self.steady_slope < 0:
            raise ValueError("seg_max_error and steady_slope must be non-negative")
        return abstractions

    def fit(self, X, y=None):
        self._check_params()
        records = check_series_collection(X)
        pooled: dict[str, list[float]] = {}
        for rec in records:
            for s in rec:
                pooled.setdefault(s.variable, []).extend(s.values)
        self.thresholds_ = {
            var: compute_thresholds(vals, self.percentiles) for var, vals in pooled.items()
        }
        return self

    def transform(self, X) -> list[MSS]:
        check_is_fitted(self, "thresholds_")
        abstractions = self._check_params()
        out = []
        for rec in check_series_collection(X):
            seqs = []
            for s in rec:
                if "value" in abstractions:
                    try:
                        th = self.thresholds_[s.variable]
                    except KeyError:
                        raise ValueError(f"variable {s.variable!r} was not seen in fit") from None
                    seqs.append(value_abstract(s, th, f"{s.variable}.val"))
                if "trend" in abstractions:
                    seqs.append(
                        trend_abstract(s, self.seg_max_error, self.steady_slope, f"{s.variable}.trend")
                    )
            out.append(build_mss(seqs))
        return out
