from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..errors import ConfigError
from ..resampling import (
    NullDistribution,
    NullKind,
    NullModel,
    TestConfig,
    exact_component_nulls,
    from_counts,
    permutation_counts,
)
from ..resampling.null import DrawRange
from ..stats import DrawCounts, ShotString, StatLike, Statistic, as_stat_value, t_k, t_k_hit, t_k_miss
from .observation import ObservationResult

DEFAULT_BINS = 40
DEFAULT_RANGE = (-1.0, 1.0)


# ----------------------------
# p-value distributions
# ----------------------------


@dataclass(frozen=True)
class PValueSummary:
    """Five-number summary and ECDF of one subject's defined p-values.

    Quartiles interpolate linearly between closest ranks.
    """

    subject: str
    count: int
    undefined_count: int
    minimum: Optional[float]
    q1: Optional[float]
    median: Optional[float]
    q3: Optional[float]
    maximum: Optional[float]
    ecdf: Tuple[Tuple[float, float], ...]

    @property
    def empty(self) -> bool:
        return self.count == 0


def group_pvalues(
    results: Sequence[ObservationResult],
    depth: int = 2,
    statistic: Statistic = Statistic.T_K,
    null_model: NullModel = NullModel.PERMUTATION,
) -> "OrderedDict[str, List[Optional[float]]]":
    """p-values per subject for one test variant; untestable results contribute None."""
    groups: "OrderedDict[str, List[Optional[float]]]" = OrderedDict()
    for r in results:
        if r.depth != depth or r.statistic is not statistic or r.null_model is not null_model:
            continue
        groups.setdefault(r.subject, []).append(r.p_value.value if r.p_value is not None else None)
    return groups


def summarize_pvalues(subject: str, pvalues: Sequence[Optional[float]]) -> PValueSummary:
    defined = np.sort(np.array([p for p in pvalues if p is not None], dtype=np.float64))
    undefined = len(pvalues) - int(defined.size)
    if defined.size == 0:
        return PValueSummary(subject, 0, undefined, None, None, None, None, None, ())
    q = np.percentile(defined, [0, 25, 50, 75, 100])
    n = defined.size
    ecdf = tuple((float(p), (i + 1) / n) for i, p in enumerate(defined))
    return PValueSummary(
        subject=subject,
        count=int(n),
        undefined_count=undefined,
        minimum=float(q[0]),
        q1=float(q[1]),
        median=float(q[2]),
        q3=float(q[3]),
        maximum=float(q[4]),
        ecdf=ecdf,
    )


def pvalue_distribution_report(
    groups: Mapping[str, Sequence[Optional[float]]],
) -> "OrderedDict[str, PValueSummary]":
    return OrderedDict((subject, summarize_pvalues(subject, ps)) for subject, ps in groups.items())


# ----------------------------
# Null histograms
# ----------------------------


@dataclass(frozen=True)
class HistogramReport:
    """Binned null distribution with the observed marker and the critical region.

    threshold is the smallest support value v whose strictly-greater weight
    is at most alpha * total_draws; mass_above is that weight.
    """

    statistic: Statistic
    depth: int
    kind: NullKind
    alpha: float
    edges: Tuple[float, ...]
    counts: Tuple[int, ...]
    observed: Optional[Fraction]
    threshold: Optional[Fraction]
    mass_above: int
    undefined_count: int
    total_draws: int

    @property
    def binned_total(self) -> int:
        return sum(self.counts)

    @property
    def observed_in_critical_region(self) -> bool:
        return self.observed is not None and self.threshold is not None and self.observed > self.threshold


def critical_threshold(null: NullDistribution, alpha: float) -> Tuple[Optional[Fraction], int]:
    num, den, w = null.support()
    if w.size == 0:
        return None, 0
    limit = alpha * null.total_draws
    above = np.concatenate([np.cumsum(w[::-1])[::-1][1:], [0]])
    idx = int(np.argmax(above <= limit))
    return Fraction(int(num[idx]), int(den[idx])), int(above[idx])


def modal_value(null: NullDistribution) -> Optional[Fraction]:
    """Most heavily weighted defined value (smallest on ties)."""
    num, den, w = null.support()
    if w.size == 0:
        return None
    idx = int(np.argmax(w))
    return Fraction(int(num[idx]), int(den[idx]))


def null_histogram(
    null: NullDistribution,
    observed: StatLike,
    alpha: float = 0.05,
    bins: int = DEFAULT_BINS,
    value_range: Tuple[float, float] = DEFAULT_RANGE,
) -> HistogramReport:
    counts, edges = np.histogram(null.values, bins=bins, range=value_range, weights=null.weights)
    threshold, mass_above = critical_threshold(null, alpha)
    return HistogramReport(
        statistic=null.statistic,
        depth=null.depth,
        kind=null.kind,
        alpha=alpha,
        edges=tuple(float(e) for e in edges),
        counts=tuple(int(round(c)) for c in counts),
        observed=as_stat_value(observed).value,
        threshold=threshold,
        mass_above=mass_above,
        undefined_count=null.undefined_count,
        total_draws=null.total_draws,
    )


@dataclass(frozen=True)
class ComponentHistograms:
    """t_k and its two components evaluated on one shared set of draws."""

    total: HistogramReport
    hit: HistogramReport
    miss: HistogramReport
    nulls: Dict[Statistic, NullDistribution]
    counts: Optional[DrawCounts] = None


def null_component_histograms(
    s: ShotString,
    k: int,
    cfg: TestConfig,
    bins: int = DEFAULT_BINS,
    draw_range: Optional[DrawRange] = None,
) -> ComponentHistograms:
    cfg = replace(cfg, depth=k)
    if cfg.null_model is not NullModel.PERMUTATION:
        raise ConfigError("component histograms are drawn from the permutation null")
    counts = permutation_counts(s, cfg, draw_range)
    nulls = {
        st: from_counts(counts, st, k, s.length, s.hits, draw_range)
        for st in (Statistic.T_K, Statistic.T_K_HIT, Statistic.T_K_MISS)
    }
    return ComponentHistograms(
        total=null_histogram(nulls[Statistic.T_K], t_k(s, k), cfg.alpha, bins),
        hit=null_histogram(nulls[Statistic.T_K_HIT], t_k_hit(s, k), cfg.alpha, bins),
        miss=null_histogram(nulls[Statistic.T_K_MISS], t_k_miss(s, k), cfg.alpha, bins),
        nulls=nulls,
        counts=counts,
    )


def exact_component_histograms(s: ShotString, k: int, cfg: TestConfig, bins: int = DEFAULT_BINS) -> ComponentHistograms:
    """Component histograms over every arrangement of s (CapExceeded propagates)."""
    nulls = exact_component_nulls(s, k, cfg.enumeration_cap)
    return ComponentHistograms(
        total=null_histogram(nulls[Statistic.T_K], t_k(s, k), cfg.alpha, bins),
        hit=null_histogram(nulls[Statistic.T_K_HIT], t_k_hit(s, k), cfg.alpha, bins),
        miss=null_histogram(nulls[Statistic.T_K_MISS], t_k_miss(s, k), cfg.alpha, bins),
        nulls=nulls,
    )
