from .counts import ConditionalCount, DrawCounts, conditional_counts, count_matrix
from .shot_string import Outcome, ShotString
from .statistics import (
    UNDEFINED,
    StatLike,
    StatValue,
    Statistic,
    as_stat_value,
    evaluate,
    rational_values,
    t_k,
    t_k_hit,
    t_k_miss,
)

__all__ = [
    "ConditionalCount",
    "DrawCounts",
    "Outcome",
    "ShotString",
    "StatLike",
    "StatValue",
    "Statistic",
    "UNDEFINED",
    "as_stat_value",
    "conditional_counts",
    "count_matrix",
    "evaluate",
    "rational_values",
    "t_k",
    "t_k_hit",
    "t_k_miss",
]
