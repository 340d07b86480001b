"""Ordinal patterns: extraction, reflection, ranking, and window schemes.

The ordinal pattern of ``h+1`` consecutive values is the permutation of their
time indices listed by descending value, e.g. ``(0.0, 2.0, 1.0, 3.0)`` gives
``(3, 1, 2, 0)`` because value 3 at index 3 is the largest, then index 1,
then index 2, then index 0. Equal values are listed earlier-index-first, so
an all-equal window yields the identity pattern ``(0, 1, ..., h)``.

Only the up/down shape of the data enters a pattern: applying any strictly
increasing function to a window leaves its pattern unchanged, and negating a
tie-free window reverses the pattern tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import NonFiniteValue, RankOutOfRange, SeriesTooShort, WindowTooShort
from .ingest import TimeSeries


class WindowScheme(Enum):
    """How consecutive pattern windows advance along a series.

    SLIDING moves the window start forward one observation at a time. BLOCK
    moves it forward by h, so consecutive blocks share exactly one boundary
    point (the last value of one window is the first value of the next).
    """

    SLIDING = "sliding"
    BLOCK = "block"


@dataclass(frozen=True)
class OrdinalPattern:
    """A permutation of {0..h} encoding the shape of h+1 consecutive values.

    ``indices`` lists the window positions by descending value, ties broken
    by the smaller position first.
    """

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        indices = tuple(int(i) for i in self.indices)
        if len(indices) < 2:
            raise WindowTooShort(f"a pattern needs order >= 1, got {indices}")
        if sorted(indices) != list(range(len(indices))):
            raise ValueError(f"{indices} is not a permutation of 0..{len(indices) - 1}")
        object.__setattr__(self, "indices", indices)

    @property
    def order(self) -> int:
        """Number of increments the pattern spans (= len(indices) - 1)."""
        return len(self.indices) - 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __str__(self) -> str:
        return "(" + ",".join(str(i) for i in self.indices) + ")"


def extract_pattern(window: Sequence[float], epsilon: float = 0.0) -> OrdinalPattern:
    """Return the ordinal pattern of one window of at least two finite values.

    With ``epsilon > 0``, values whose gap in the descending order is at most
    ``epsilon`` are chained into one tie group and listed by index; the
    default 0.0 treats only exactly equal values as tied.

    >>> str(extract_pattern((0.0, 2.0, 1.0, 3.0)))
    '(3,1,2,0)'
    >>> str(extract_pattern((5.0, 5.0, 1.0)))
    '(0,1,2)'
    """
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    values = np.asarray(window, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise WindowTooShort(f"window must hold >= 2 values, got shape {values.shape}")
    if not np.isfinite(values).all():
        raise NonFiniteValue(f"window contains NaN or infinity: {values.tolist()}")
    order = sorted(range(values.size), key=lambda i: (-values[i], i))
    if epsilon > 0.0:
        order = _regroup_epsilon_ties(values, order, epsilon)
    return OrdinalPattern(tuple(order))


def _regroup_epsilon_ties(
    values: np.ndarray, order: list[int], epsilon: float
) -> list[int]:
    # Chain descending-sorted values into tie groups (gap <= epsilon joins the
    # group) and list each group's indices in ascending order.
    regrouped: list[int] = []
    group = [order[0]]
    for prev, cur in zip(order, order[1:]):
        if values[prev] - values[cur] <= epsilon:
            group.append(cur)
        else:
            regrouped.extend(sorted(group))
            group = [cur]
    regrouped.extend(sorted(group))
    return regrouped


def reflect(pattern: OrdinalPattern) -> OrdinalPattern:
    """Return the pattern read right-to-left (an involution).

    For tie-free data this is the pattern of the negated window.
    """
    return OrdinalPattern(pattern.indices[::-1])


def lex_rank(pattern: OrdinalPattern) -> int:
    """Lexicographic rank of the index tuple among all (h+1)! permutations."""
    indices = pattern.indices
    n = len(indices)
    rank = 0
    for j, v in enumerate(indices):
        smaller_after = sum(1 for u in indices[j + 1 :] if u < v)
        rank += smaller_after * math.factorial(n - 1 - j)
    return rank


def rank_to_pattern(rank: int, h: int) -> OrdinalPattern:
    """Inverse of :func:`lex_rank` for patterns of order ``h``."""
    size = math.factorial(h + 1)
    if not 0 <= rank < size:
        raise RankOutOfRange(f"rank {rank} outside [0, {size - 1}] for order h={h}")
    available = list(range(h + 1))
    indices: list[int] = []
    remainder = rank
    for j in range(h + 1):
        f = math.factorial(h - j)
        digit, remainder = divmod(remainder, f)
        indices.append(available.pop(digit))
    return OrdinalPattern(tuple(indices))


@dataclass(frozen=True)
class PatternSequence:
    """The ordered patterns extracted from one series under a window scheme.

    ``rows`` is an (n_windows, order+1) integer matrix; row i is the index
    tuple of window i. The matrix form keeps large scans cheap; use
    :meth:`patterns` or indexing for :class:`OrdinalPattern` objects.
    """

    order: int
    scheme: WindowScheme
    rows: np.ndarray

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows)
        if rows.ndim != 2 or rows.shape[1] != self.order + 1:
            raise ValueError(
                f"rows must be (n, {self.order + 1}), got shape {rows.shape}"
            )
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return self.rows.shape[0]

    def __getitem__(self, i: int) -> OrdinalPattern:
        return OrdinalPattern(tuple(int(v) for v in self.rows[i]))

    def __iter__(self) -> Iterator[OrdinalPattern]:
        for i in range(len(self)):
            yield self[i]

    def patterns(self) -> tuple[OrdinalPattern, ...]:
        return tuple(self)


def _window_starts(n: int, h: int, scheme: WindowScheme) -> np.ndarray:
    if scheme is WindowScheme.SLIDING:
        return np.arange(n - h)
    # Block windows start at 0, h, 2h, ...; consecutive blocks share one point.
    return np.arange(0, n - h, h)


def _descending_argsort(windows: np.ndarray) -> np.ndarray:
    # Stable sort on the negated values = descending by value with equal
    # values kept in index order, which is exactly the tie rule.
    return np.argsort(-windows, axis=-1, kind="stable")


def pattern_sequence(
    series: Union[TimeSeries, Sequence[float]],
    h: int,
    scheme: WindowScheme = WindowScheme.SLIDING,
    epsilon: float = 0.0,
) -> PatternSequence:
    """Extract the pattern of every window of ``h+1`` consecutive values.

    ``series`` may be a :class:`TimeSeries` or any one-dimensional sequence
    of finite floats. SLIDING yields ``N - h`` patterns, BLOCK yields
    ``floor((N - 1) / h)``.
    """
    if h < 1:
        raise ValueError(f"order h must be >= 1, got {h}")
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    if isinstance(series, TimeSeries):
        values = series.values
    else:
        values = np.asarray(series, dtype=float)
        if values.ndim != 1:
            raise ValueError("series must be one-dimensional")
        if not np.isfinite(values).all():
            raise NonFiniteValue("series contains NaN or infinity")
    n = values.size
    if n < h + 1:
        raise SeriesTooShort(f"need >= {h + 1} points for order h={h}, got {n}")
    starts = _window_starts(n, h, scheme)
    windows = values[starts[:, None] + np.arange(h + 1)]
    if epsilon > 0.0:
        rows = np.array(
            [extract_pattern(w, epsilon).indices for w in windows], dtype=np.int16
        )
    else:
        rows = _descending_argsort(windows).astype(np.int16)
    return PatternSequence(h, scheme, rows)


def _rank_rows(rows: np.ndarray) -> np.ndarray:
    """Vectorized :func:`lex_rank` over the rows of a pattern matrix."""
    n_cols = rows.shape[1]
    ranks = np.zeros(rows.shape[0], dtype=np.int64)
    for j in range(n_cols - 1):
        smaller_after = (rows[:, j + 1 :] < rows[:, j : j + 1]).sum(axis=1)
        ranks += smaller_after.astype(np.int64) * math.factorial(n_cols - 1 - j)
    return ranks
