"""Frequent temporal pattern mining from multivariate time series with
vertical id lists and Extended Vertical Lists."""

from .abstraction import TemporalAbstraction, build_mss, compute_thresholds, trend_abstract, value_abstract
from .mining import FTPM, Dataset, FTPMwEVL, MiningResult, mine_evl, mine_ftpm
from .model import MSS, State, StateInterval, Symbol, interval, relation
from .oracle import contains, count_occurrences, starting_positions
from .patterns import TemporalPattern, parse_key, pattern_key

__version__ = "0.1.0"

__all__ = [
    "TemporalAbstraction",
    "build_mss",
    "compute_thresholds",
    "trend_abstract",
    "value_abstract",
    "FTPM",
    "FTPMwEVL",
    "Dataset",
    "MiningResult",
    "mine_evl",
    "mine_ftpm",
    "MSS",
    "State",
    "StateInterval",
    "Symbol",
    "interval",
    "relation",
    "contains",
    "count_occurrences",
    "starting_positions",
    "TemporalPattern",
    "parse_key",
    "pattern_key",
]
