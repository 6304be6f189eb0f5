"""Frequent temporal pattern miners."""

from ._base import Dataset, LevelStats, MiningResult, is_frequent, min_supports
from .evl import ExtendedVerticalList, FTPMwEVL, evl_memory_estimate, evl_size1, mine_evl
from .ftpm import FTPM, find_size1_ftps, mine_ftpm, potential_ids

__all__ = [
    "Dataset",
    "LevelStats",
    "MiningResult",
    "is_frequent",
    "min_supports",
    "ExtendedVerticalList",
    "FTPMwEVL",
    "evl_memory_estimate",
    "evl_size1",
    "mine_evl",
    "FTPM",
    "find_size1_ftps",
    "mine_ftpm",
    "potential_ids",
]
