from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np

from .counts import DrawCounts, conditional_counts
from .shot_string import Outcome, ShotString


class Statistic(Enum):
    T_K = "tk"
    T_K_HIT = "tk-hit"
    T_K_MISS = "tk-miss"

    @property
    def label(self) -> str:
        return {"tk": "t_k", "tk-hit": "t_k,hit", "tk-miss": "t_k,miss"}[self.value]


@dataclass(frozen=True)
class StatValue:
    """An exact statistic value, or UNDEFINED when value is None."""

    value: Optional[Fraction] = None

    @classmethod
    def ratio(cls, numerator: int, denominator: int) -> StatValue:
        if denominator == 0:
            return UNDEFINED
        return cls(Fraction(numerator, denominator))

    @property
    def is_defined(self) -> bool:
        return self.value is not None

    def as_float(self) -> Optional[float]:
        return None if self.value is None else float(self.value)

    def __float__(self) -> float:
        if self.value is None:
            raise ValueError("statistic is undefined")
        return float(self.value)

    def __sub__(self, other: StatValue) -> StatValue:
        if self.value is None or other.value is None:
            return UNDEFINED
        return StatValue(self.value - other.value)

    def __str__(self) -> str:
        if self.value is None:
            return "undefined"
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


UNDEFINED = StatValue(None)

StatLike = Union[StatValue, Fraction, int, float, None]


def as_stat_value(x: StatLike) -> StatValue:
    if isinstance(x, StatValue):
        return x
    if x is None:
        return UNDEFINED
    if isinstance(x, float):
        return StatValue(Fraction(x).limit_denominator(10**12))
    return StatValue(Fraction(x))


def t_k_hit(s: ShotString, k: int) -> StatValue:
    c = conditional_counts(s, k, Outcome.HIT)
    return StatValue.ratio(c.successes, c.realized_sets)


def t_k_miss(s: ShotString, k: int) -> StatValue:
    c = conditional_counts(s, k, Outcome.MISS)
    return StatValue.ratio(c.successes, c.realized_sets)


def t_k(s: ShotString, k: int) -> StatValue:
    return t_k_hit(s, k) - t_k_miss(s, k)


def evaluate(statistic: Statistic, s: ShotString, k: int) -> StatValue:
    if statistic is Statistic.T_K:
        return t_k(s, k)
    if statistic is Statistic.T_K_HIT:
        return t_k_hit(s, k)
    return t_k_miss(s, k)


def rational_values(counts: DrawCounts, statistic: Statistic) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact statistic values of every counted draw.

    Returns (numerators, denominators, defined) with positive denominators;
    undefined rows hold 0/1 and defined=False.
    """
    if statistic is Statistic.T_K_HIT:
        num, den = counts.hit_successes, counts.hit_realized
    elif statistic is Statistic.T_K_MISS:
        num, den = counts.miss_successes, counts.miss_realized
    else:
        num = counts.hit_successes * counts.miss_realized - counts.miss_successes * counts.hit_realized
        den = counts.hit_realized * counts.miss_realized
    defined = den > 0
    num = np.where(defined, num, 0).astype(np.int64)
    den = np.where(defined, den, 1).astype(np.int64)
    g = np.gcd(num, den)
    return num // g, den // g, defined
