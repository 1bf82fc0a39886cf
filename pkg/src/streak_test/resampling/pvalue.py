from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..stats import ShotString, StatLike, as_stat_value, evaluate
from .config import TestConfig
from .null import NullDistribution, exact_null


@dataclass(frozen=True)
class PValue:
    """Fraction of null draws strictly above the observed value.

    Undefined draws stay in the denominator and never count as exceeding.
    value is None when the observed statistic is undefined.
    """

    value: Optional[float]
    exceed_count: int
    defined_draws: int
    total_draws: int

    @property
    def is_defined(self) -> bool:
        return self.value is not None

    @property
    def fraction(self) -> Optional[Fraction]:
        if self.value is None:
            return None
        return Fraction(self.exceed_count, self.total_draws)

    def rejects(self, alpha: float) -> bool:
        return self.value is not None and self.value < alpha


def p_value(observed: StatLike, null: NullDistribution) -> PValue:
    obs = as_stat_value(observed)
    if obs.value is None:
        return PValue(None, 0, null.defined_weight, null.total_draws)
    exceed = null.weight_above(obs.value.numerator, obs.value.denominator)
    return PValue(exceed / null.total_draws, exceed, null.defined_weight, null.total_draws)


def exact_p_value(s: ShotString, cfg: TestConfig) -> PValue:
    """p-value against the full enumeration of rearrangements of s (CapExceeded propagates)."""
    return p_value(evaluate(cfg.statistic, s, cfg.depth), exact_null(s, cfg))
