"""
streak-test: permutation and Bernoulli tests for streaky binary sequences.

Exact conditional-probability statistics, reproducible Monte Carlo and
exhaustive nulls, batch analysis over shot logs, and report emission.
"""

from .analysis import (
    BiasRow,
    ComponentHistograms,
    DatasetSummary,
    HistogramReport,
    Observation,
    ObservationResult,
    PValueSummary,
    Scope,
    SignificanceTable,
    SubjectSummary,
    analyze_observation,
    batch_analyze,
    bias_table,
    exact_component_histograms,
    null_component_histograms,
    null_histogram,
    pvalue_distribution_report,
    season_pct_to_date,
    significance_counts,
    summarize_dataset,
)
from .errors import (
    CapExceeded,
    ConfigError,
    EmptySequenceError,
    RowError,
    ShotLogError,
    StreakTestError,
    UntestableObservation,
)
from .io import emit_report, load_grid, parse_shot_log, read_shot_log
from .resampling import (
    NullDistribution,
    NullKind,
    NullModel,
    PValue,
    TestConfig,
    TestGrid,
    bernoulli_null,
    exact_null,
    exact_p_value,
    null_mean_bias,
    p_value,
    permutation_null,
)
from .stats import (
    UNDEFINED,
    ConditionalCount,
    Outcome,
    ShotString,
    StatValue,
    Statistic,
    conditional_counts,
    t_k,
    t_k_hit,
    t_k_miss,
)

__version__ = "0.1.0"

__all__ = [
    "BiasRow",
    "CapExceeded",
    "ComponentHistograms",
    "ConditionalCount",
    "ConfigError",
    "DatasetSummary",
    "EmptySequenceError",
    "HistogramReport",
    "NullDistribution",
    "NullKind",
    "NullModel",
    "Observation",
    "ObservationResult",
    "Outcome",
    "PValue",
    "PValueSummary",
    "RowError",
    "Scope",
    "ShotLogError",
    "ShotString",
    "SignificanceTable",
    "StatValue",
    "Statistic",
    "StreakTestError",
    "SubjectSummary",
    "TestConfig",
    "TestGrid",
    "UNDEFINED",
    "UntestableObservation",
    "analyze_observation",
    "batch_analyze",
    "bernoulli_null",
    "bias_table",
    "conditional_counts",
    "emit_report",
    "exact_component_histograms",
    "exact_null",
    "exact_p_value",
    "load_grid",
    "null_component_histograms",
    "null_histogram",
    "null_mean_bias",
    "p_value",
    "parse_shot_log",
    "permutation_null",
    "pvalue_distribution_report",
    "read_shot_log",
    "season_pct_to_date",
    "significance_counts",
    "summarize_dataset",
    "t_k",
    "t_k_hit",
    "t_k_miss",
]
