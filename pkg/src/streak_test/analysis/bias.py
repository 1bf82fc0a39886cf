from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

from ..resampling import DEFAULT_ENUMERATION_CAP, exact_null_for
from ..stats import Statistic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BiasRow:
    """Exact null mean of a statistic for strings of `length` shots with `hits` hits."""

    length: int
    hits: int
    depth: int
    statistic: Statistic
    mean: Optional[Fraction]
    defined_arrangements: int
    total_arrangements: int


def bias_table(
    lengths: Iterable[int],
    depth: int,
    statistic: Statistic = Statistic.T_K,
    hits: Optional[Iterable[int]] = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> List[BiasRow]:
    """null_mean_bias over a grid of (length, hits); hits default to 1..length-1.

    Raises CapExceeded on the first cell too large to enumerate.
    """
    hit_values = None if hits is None else sorted(set(hits))
    rows: List[BiasRow] = []
    for length in sorted(set(lengths)):
        for h in hit_values if hit_values is not None else range(1, length):
            if not 0 <= h <= length:
                continue
            null = exact_null_for(length, h, depth, statistic, cap)
            rows.append(
                BiasRow(
                    length=length,
                    hits=h,
                    depth=depth,
                    statistic=statistic,
                    mean=null.mean(),
                    defined_arrangements=null.defined_weight,
                    total_arrangements=null.total_draws,
                )
            )
            logger.debug("bias L=%d h=%d k=%d: %s", length, h, depth, rows[-1].mean)
    return rows
