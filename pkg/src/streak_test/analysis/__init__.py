from .batch import batch_analyze, group_by_subject, observation_seed
from .bias import BiasRow, bias_table
from .observation import Observation, ObservationResult, Scope, analyze_observation, season_pct_to_date
from .reports import (
    ComponentHistograms,
    HistogramReport,
    PValueSummary,
    critical_threshold,
    exact_component_histograms,
    group_pvalues,
    modal_value,
    null_component_histograms,
    null_histogram,
    pvalue_distribution_report,
    summarize_pvalues,
)
from .summary import DatasetSummary, SignificanceTable, SubjectSummary, significance_counts, summarize_dataset

__all__ = [
    "BiasRow",
    "ComponentHistograms",
    "DatasetSummary",
    "HistogramReport",
    "Observation",
    "ObservationResult",
    "PValueSummary",
    "Scope",
    "SignificanceTable",
    "SubjectSummary",
    "analyze_observation",
    "batch_analyze",
    "bias_table",
    "critical_threshold",
    "exact_component_histograms",
    "group_by_subject",
    "group_pvalues",
    "modal_value",
    "null_component_histograms",
    "null_histogram",
    "observation_seed",
    "pvalue_distribution_report",
    "season_pct_to_date",
    "significance_counts",
    "summarize_dataset",
    "summarize_pvalues",
]
