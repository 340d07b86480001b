"""Coincident/reflected pattern dependence between two aligned series.

Two series can agree in shape (their windows show the same pattern at the
same time) or mirror each other (one window's pattern is the other read
right-to-left). The estimators here compare the observed rate of each kind
of agreement against the product baseline expected under independence:

    p_eq   = share of windows with identical patterns
    p_neq  = share of windows with mutually reflected patterns
    alpha  = p_eq  - sum_pi  freqX(pi) * freqY(pi)
    beta   = p_neq - sum_pi  freqX(pi) * freqY(reflect(pi))

A positive alpha indicates positive (shape-following) dependence, a positive
beta negative (shape-mirroring) dependence. Both are model free: they use
only relative pattern frequencies, so they are invariant under strictly
increasing transforms of either series and robust to a few large outliers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    DelayTooLarge,
    EmptySequence,
    LengthMismatch,
    NotAligned,
    OrderMismatch,
    SeriesTooShort,
    ZeroVariance,
)
from .ingest import TimeSeries
from .patterns import (
    OrdinalPattern,
    PatternSequence,
    WindowScheme,
    _rank_rows,
    lex_rank,
    pattern_sequence,
    rank_to_pattern,
    reflect,
)

#: Patterns tracked by default in rolling reports at h=3.
DEFAULT_WATCH: tuple[OrdinalPattern, ...] = (
    OrdinalPattern((0, 1, 2, 3)),
    OrdinalPattern((0, 3, 2, 1)),
    OrdinalPattern((1, 0, 2, 3)),
)


@dataclass(frozen=True)
class PatternDistribution:
    """Per-pattern counts and relative frequencies for one series.

    ``counts`` maps each observed pattern to its count, keyed in ascending
    lexicographic rank order; unobserved patterns simply have frequency 0.
    """

    order: int
    counts: Mapping[OrdinalPattern, int]
    total: int

    def __post_init__(self) -> None:
        if self.total < 1:
            raise EmptySequence("distribution needs at least one pattern")
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not sum to total")
        for p in self.counts:
            if p.order != self.order:
                raise OrderMismatch(
                    f"pattern {p} has order {p.order}, distribution has {self.order}"
                )

    @classmethod
    def from_counts(cls, counts: Mapping[OrdinalPattern, int]) -> "PatternDistribution":
        """Build a distribution from a pattern -> count mapping."""
        if not counts:
            raise EmptySequence("no counts given")
        ordered = dict(sorted(counts.items(), key=lambda kv: lex_rank(kv[0])))
        order = next(iter(ordered)).order
        return cls(order, ordered, sum(ordered.values()))

    def freq(self, pattern: OrdinalPattern) -> float:
        """Relative frequency of ``pattern`` (0.0 if never observed)."""
        return self.counts.get(pattern, 0) / self.total


@dataclass(frozen=True)
class DependenceReport:
    """All estimates for one series pair at one order and window scheme.

    ``z_eq``/``z_neq`` are heuristic diagnostics: the coincident/reflected
    counts standardized by the binomial moments of the independence baseline.
    They ignore the serial dependence of overlapping windows and are None
    when the baseline variance is zero; they never gate any result.
    """

    h: int
    n_windows: int
    n_coincident: int
    n_reflected: int
    p_eq: float
    p_neq: float
    base_eq: float
    base_neq: float
    alpha_tilde: float
    beta_tilde: float
    z_eq: Optional[float]
    z_neq: Optional[float]


@dataclass(frozen=True)
class RollingWindow:
    """One rolling window: its key range, report, and watch-pattern counts.

    ``watch_counts`` maps each watched pattern to its (count in X, count in Y)
    pair inside this window.
    """

    start_key: str
    end_key: str
    report: DependenceReport
    watch_counts: Mapping[OrdinalPattern, tuple[int, int]]


@dataclass(frozen=True)
class RollingReport:
    """Consecutive equal-length windows over an aligned pair."""

    windows: tuple[RollingWindow, ...]

    def __len__(self) -> int:
        return len(self.windows)

    def __iter__(self) -> Iterator[RollingWindow]:
        return iter(self.windows)


def distribution(seq: PatternSequence) -> PatternDistribution:
    """Count every pattern occurrence in a sequence."""
    if len(seq) == 0:
        raise EmptySequence("cannot build a distribution from zero windows")
    ranks = _rank_rows(seq.rows)
    uniq, cnt = np.unique(ranks, return_counts=True)
    counts = {
        rank_to_pattern(int(r), seq.order): int(c) for r, c in zip(uniq, cnt)
    }
    return PatternDistribution(seq.order, counts, len(seq))


def coincident_reflected_counts(
    seq_x: PatternSequence, seq_y: PatternSequence
) -> tuple[int, int]:
    """Count windows with identical patterns and with mutually reflected ones."""
    if len(seq_x) != len(seq_y):
        raise LengthMismatch(f"{len(seq_x)} windows vs {len(seq_y)}")
    if seq_x.order != seq_y.order:
        raise OrderMismatch(f"order {seq_x.order} vs {seq_y.order}")
    coincident = int((seq_x.rows == seq_y.rows).all(axis=1).sum())
    reflected = int((seq_x.rows == seq_y.rows[:, ::-1]).all(axis=1).sum())
    return coincident, reflected


def _independence_baselines(
    dist_x: PatternDistribution, dist_y: PatternDistribution
) -> tuple[float, float]:
    # Fixed summation order (lexicographic rank ascending) for reproducibility.
    union = sorted(set(dist_x.counts) | set(dist_y.counts), key=lex_rank)
    base_eq = 0.0
    base_neq = 0.0
    for p in union:
        fx = dist_x.freq(p)
        base_eq += fx * dist_y.freq(p)
        base_neq += fx * dist_y.freq(reflect(p))
    return base_eq, base_neq


def alpha_beta(
    dist_x: PatternDistribution,
    dist_y: PatternDistribution,
    p_eq: float,
    p_neq: float,
) -> tuple[float, float]:
    """Excess of observed agreement rates over the independence baselines.

    Returns ``(alpha, beta)`` where ``alpha = p_eq - sum freqX*freqY`` and
    ``beta = p_neq - sum freqX*freqY(reflected)``.
    """
    if dist_x.order != dist_y.order:
        raise OrderMismatch(f"order {dist_x.order} vs {dist_y.order}")
    if not (0.0 <= p_eq <= 1.0 and 0.0 <= p_neq <= 1.0):
        raise ValueError(f"p_eq={p_eq} and p_neq={p_neq} must lie in [0, 1]")
    base_eq, base_neq = _independence_baselines(dist_x, dist_y)
    return p_eq - base_eq, p_neq - base_neq


def _z_score(count: int, n: int, base: float) -> Optional[float]:
    variance = n * base * (1.0 - base)
    if variance <= 0.0:
        return None
    return (count - n * base) / math.sqrt(variance)


def _pair_report(seq_x: PatternSequence, seq_y: PatternSequence) -> DependenceReport:
    n_coincident, n_reflected = coincident_reflected_counts(seq_x, seq_y)
    n = len(seq_x)
    p_eq = n_coincident / n
    p_neq = n_reflected / n
    dist_x = distribution(seq_x)
    dist_y = distribution(seq_y)
    base_eq, base_neq = _independence_baselines(dist_x, dist_y)
    return DependenceReport(
        h=seq_x.order,
        n_windows=n,
        n_coincident=n_coincident,
        n_reflected=n_reflected,
        p_eq=p_eq,
        p_neq=p_neq,
        base_eq=base_eq,
        base_neq=base_neq,
        alpha_tilde=p_eq - base_eq,
        beta_tilde=p_neq - base_neq,
        z_eq=_z_score(n_coincident, n, base_eq),
        z_neq=_z_score(n_reflected, n, base_neq),
    )


def _check_aligned(x: TimeSeries, y: TimeSeries) -> None:
    if len(x) != len(y):
        raise NotAligned(
            f"series {x.name!r} has {len(x)} rows, {y.name!r} has {len(y)}; "
            "align them first"
        )
    if x.keys != y.keys:
        raise NotAligned(
            f"series {x.name!r} and {y.name!r} have different keys; align them first"
        )


def analyze_pair(
    x: TimeSeries,
    y: TimeSeries,
    h: int,
    scheme: WindowScheme = WindowScheme.SLIDING,
    epsilon: float = 0.0,
) -> DependenceReport:
    """Full dependence report for an aligned pair at order ``h``."""
    _check_aligned(x, y)
    seq_x = pattern_sequence(x, h, scheme, epsilon)
    seq_y = pattern_sequence(y, h, scheme, epsilon)
    return _pair_report(seq_x, seq_y)


def delay_scan(
    x: TimeSeries,
    y: TimeSeries,
    h: int,
    scheme: WindowScheme,
    delays: Sequence[int],
    epsilon: float = 0.0,
) -> list[tuple[int, DependenceReport]]:
    """Reports for the pair with Y shifted by each delay.

    Positive delay d compares X's window starting at i with Y's window
    starting at i + d (Y later in key order); negative d shifts X instead.
    Each report is computed on the overlapping region only, so d = 0
    reproduces :func:`analyze_pair` exactly.
    """
    _check_aligned(x, y)
    n = len(x)
    results: list[tuple[int, DependenceReport]] = []
    for d in delays:
        d = int(d)
        overlap = n - abs(d)
        if overlap < h + 1:
            raise DelayTooLarge(
                f"delay {d} leaves {max(overlap, 0)} overlapping points, "
                f"need >= {h + 1}"
            )
        if d >= 0:
            vx = x.values[: n - d]
            vy = y.values[d:]
        else:
            vx = x.values[-d:]
            vy = y.values[: n + d]
        seq_x = pattern_sequence(vx, h, scheme, epsilon)
        seq_y = pattern_sequence(vy, h, scheme, epsilon)
        results.append((d, _pair_report(seq_x, seq_y)))
    return results


def rolling_analysis(
    x: TimeSeries,
    y: TimeSeries,
    h: int,
    scheme: WindowScheme,
    window_len: int,
    step: int,
    watch: Optional[Sequence[OrdinalPattern]] = None,
) -> RollingReport:
    """One dependence report per full window of ``window_len`` observations.

    Windows start at 0, step, 2*step, ...; a trailing window shorter than
    ``window_len`` is dropped so every report covers the same pattern count.
    ``watch`` patterns (default: :data:`DEFAULT_WATCH` when h is 3, none
    otherwise) get per-window occurrence counts in each series.
    """
    _check_aligned(x, y)
    if window_len < h + 1:
        raise SeriesTooShort(f"window_len {window_len} < h + 1 = {h + 1}")
    if window_len > len(x):
        raise SeriesTooShort(
            f"window_len {window_len} exceeds series length {len(x)}"
        )
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    if watch is None:
        watch = DEFAULT_WATCH if h == 3 else ()
    for p in watch:
        if p.order != h:
            raise OrderMismatch(f"watch pattern {p} has order {p.order}, expected {h}")

    windows: list[RollingWindow] = []
    for start in range(0, len(x) - window_len + 1, step):
        stop = start + window_len
        seq_x = pattern_sequence(x.values[start:stop], h, scheme)
        seq_y = pattern_sequence(y.values[start:stop], h, scheme)
        watch_counts = {
            p: (
                int((seq_x.rows == np.asarray(p.indices)).all(axis=1).sum()),
                int((seq_y.rows == np.asarray(p.indices)).all(axis=1).sum()),
            )
            for p in watch
        }
        windows.append(
            RollingWindow(
                start_key=x.keys[start],
                end_key=x.keys[stop - 1],
                report=_pair_report(seq_x, seq_y),
                watch_counts=watch_counts,
            )
        )
    return RollingReport(tuple(windows))


def increment_correlation(x: TimeSeries, y: TimeSeries) -> float:
    """Pearson correlation of the two series' first differences."""
    _check_aligned(x, y)
    if len(x) < 3:
        raise SeriesTooShort(f"need >= 3 points for increments, got {len(x)}")
    dx = np.diff(x.values)
    dy = np.diff(y.values)
    if dx.std() == 0.0 or dy.std() == 0.0:
        raise ZeroVariance("an increment series is constant")
    return float(np.corrcoef(dx, dy)[0, 1])
