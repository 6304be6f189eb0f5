"""Interval-level data model: abstraction symbols, states, state intervals and
multivariate state sequences (MSS).

Positions inside an MSS are 0-based throughout the package.
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Sequence


class Symbol(enum.Enum):
    """Abstraction symbol from either the value or the trend alphabet."""

    VERY_LOW = "VL"
    LOW = "L"
    NORMAL = "N"
    HIGH = "H"
    VERY_HIGH = "VH"
    STEADY = "ST"
    INCREASING = "INC"
    DECREASING = "DEC"

    @property
    def code(self) -> str:
        return self.value

    @property
    def ordinal(self) -> int:
        return _ORDINAL[self]

    @property
    def alphabet(self) -> str:
        return "trend" if self in TREND_ALPHABET else "value"

    @classmethod
    def from_code(cls, code: str) -> "Symbol":
        try:
            return cls(code)
        except ValueError:
            raise ValueError(f"unknown abstraction symbol {code!r}") from None

    def __lt__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.ordinal < other.ordinal

    def __repr__(self):
        return f"Symbol.{self.name}"

    # members are singletons; identity hashing avoids Enum's Python-level hash
    __hash__ = object.__hash__


VALUE_ALPHABET = (
    Symbol.VERY_LOW,
    Symbol.LOW,
    Symbol.NORMAL,
    Symbol.HIGH,
    Symbol.VERY_HIGH,
)
TREND_ALPHABET = (Symbol.STEADY, Symbol.INCREASING, Symbol.DECREASING)
_ORDINAL = {s: i for i, s in enumerate(VALUE_ALPHABET + TREND_ALPHABET)}

BEFORE = "b"
CO_OCCUR = "c"


class State(NamedTuple):
    variable: str
    symbol: Symbol

    def __str__(self):
        return f"{self.variable}={self.symbol.code}"


class StateInterval(NamedTuple):
    variable: str
    symbol: Symbol
    start: int
    end: int

    @property
    def state(self) -> State:
        return State(self.variable, self.symbol)

    def sort_key(self):
        return (self.start, self.end, self.variable, self.symbol.ordinal)


def interval(variable: str, symbol, start: int, end: int) -> StateInterval:
    """Build a validated :class:`StateInterval`; ``symbol`` may be a code."""
    if not isinstance(symbol, Symbol):
        symbol = Symbol.from_code(symbol)
    if int(start) != start or int(end) != end:
        raise ValueError(f"interval bounds must be integer ticks, got {start}, {end}")
    start, end = int(start), int(end)
    if start > end:
        raise ValueError(f"interval start {start} exceeds end {end}")
    return StateInterval(str(variable), symbol, start, end)


def relation(a: StateInterval, b: StateInterval) -> str:
    """Temporal relation of ``a`` to ``b``: ``"b"`` if ``a`` ends strictly
    before ``b`` starts, ``"c"`` (co-occur) otherwise.

    Requires ``a.start <= b.start``.
    """
    if a.start > b.start:
        raise ValueError(
            f"relation() needs a.start <= b.start, got {a.start} > {b.start}"
        )
    return BEFORE if a.end < b.start else CO_OCCUR


class MSS(tuple):
    """Multivariate state sequence: a tuple of state intervals in
    non-decreasing start order.

    Construction validates the ordering and, per variable, strict separation
    (``end < next start``) and alternation of symbols between consecutive
    intervals.
    """

    __slots__ = ()

    def __new__(cls, intervals: Sequence[StateInterval] = ()):
        self = super().__new__(cls, intervals)
        validate_mss(self)
        return self

    def __repr__(self):
        return f"MSS({list(self)!r})"


def validate_mss(intervals: Sequence[StateInterval]) -> None:
    last: dict[str, StateInterval] = {}
    prev_start = None
    for i, e in enumerate(intervals):
        if not isinstance(e, StateInterval):
            raise TypeError(f"position {i}: expected StateInterval, got {type(e).__name__}")
        if e.start > e.end:
            raise ValueError(f"position {i}: start {e.start} > end {e.end}")
        if prev_start is not None and e.start < prev_start:
            raise ValueError(f"position {i}: intervals not sorted by start time")
        prev_start = e.start
        before = last.get(e.variable)
        if before is not None:
            if not before.end < e.start:
                raise ValueError(
                    f"position {i}: variable {e.variable!r} intervals overlap or touch "
                    f"({before.end} >= {e.start})"
                )
            if before.symbol is e.symbol:
                raise ValueError(
                    f"position {i}: consecutive {e.variable!r} intervals share symbol "
                    f"{e.symbol.code}"
                )
        last[e.variable] = e
