"""Ordinal pattern dependence analysis for paired time series.

ordpat extracts ordinal patterns (the permutation describing the up/down
shape of h+1 consecutive values) from time series and estimates how often
two aligned series show identical or mutually reflected patterns, compared
with the rate independence would produce. It also ships seeded generators
for synthetic benchmark pairs and a CLI (``ordpat``) exposing everything.
"""

from .errors import (
    DelayTooLarge,
    DuplicateKey,
    EmptyFile,
    EmptySequence,
    InvalidRho,
    LengthMismatch,
    MissingColumn,
    NoCommonKeys,
    NonFiniteValue,
    NotAligned,
    OrderMismatch,
    OrdpatError,
    ParseError,
    RankOutOfRange,
    SeriesTooShort,
    TooManyOutliers,
    UnsupportedOrder,
    WindowTooShort,
    ZeroVariance,
)
from .ingest import AlignResult, TimeSeries, align, read_csv
from .patterns import (
    OrdinalPattern,
    PatternSequence,
    WindowScheme,
    extract_pattern,
    lex_rank,
    pattern_sequence,
    rank_to_pattern,
    reflect,
)
from .dependence import (
    DEFAULT_WATCH,
    DependenceReport,
    PatternDistribution,
    RollingReport,
    RollingWindow,
    alpha_beta,
    analyze_pair,
    coincident_reflected_counts,
    delay_scan,
    distribution,
    increment_correlation,
    rolling_analysis,
)
from .synth import (
    Ar1Config,
    OutlierConfig,
    correlated_ar1_pair,
    gaussian_walk_pair,
    inject_outliers,
)

__version__ = "0.1.0"

__all__ = [
    "AlignResult",
    "Ar1Config",
    "DEFAULT_WATCH",
    "DependenceReport",
    "OrdinalPattern",
    "OutlierConfig",
    "PatternDistribution",
    "PatternSequence",
    "RollingReport",
    "RollingWindow",
    "TimeSeries",
    "WindowScheme",
    "align",
    "alpha_beta",
    "analyze_pair",
    "coincident_reflected_counts",
    "correlated_ar1_pair",
    "delay_scan",
    "distribution",
    "extract_pattern",
    "gaussian_walk_pair",
    "increment_correlation",
    "inject_outliers",
    "lex_rank",
    "pattern_sequence",
    "rank_to_pattern",
    "read_csv",
    "reflect",
    "rolling_analysis",
    # errors
    "OrdpatError",
    "DelayTooLarge",
    "DuplicateKey",
    "EmptyFile",
    "EmptySequence",
    "InvalidRho",
    "LengthMismatch",
    "MissingColumn",
    "NoCommonKeys",
    "NonFiniteValue",
    "NotAligned",
    "OrderMismatch",
    "ParseError",
    "RankOutOfRange",
    "SeriesTooShort",
    "TooManyOutliers",
    "UnsupportedOrder",
    "WindowTooShort",
    "ZeroVariance",
]
