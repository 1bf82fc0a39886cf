from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import CapExceeded, ConfigError, EmptySequenceError
from ..stats import DrawCounts, ShotString, Statistic, count_matrix, rational_values
from .config import DEFAULT_ENUMERATION_CAP, NullKind, NullModel, TestConfig
from .rng import uniforms

logger = logging.getLogger(__name__)

CHUNK_DRAWS = 4096
CHUNK_ARRANGEMENTS = 65536

DrawRange = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class NullDistribution:
    """Statistic values under a null model.

    Defined values are exact fractions numerators/denominators with integer
    weights: one per draw for Monte Carlo, one per distinct value (weight =
    number of arrangements) for exact enumeration. Undefined draws are
    counted, never stored as values.
    """

    kind: NullKind
    statistic: Statistic
    depth: int
    numerators: np.ndarray
    denominators: np.ndarray
    weights: np.ndarray
    undefined_count: int
    total_draws: int
    length: int
    hits: Optional[int] = None
    draw_range: Optional[DrawRange] = None
    _support_cache: Dict[str, Tuple[np.ndarray, np.ndarray, np.ndarray]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.defined_weight + self.undefined_count != self.total_draws:
            raise ValueError(
                f"weights ({self.defined_weight}) + undefined ({self.undefined_count}) "
                f"!= total draws ({self.total_draws})"
            )

    @property
    def defined_weight(self) -> int:
        return int(self.weights.sum())

    @property
    def values(self) -> np.ndarray:
        return self.numerators / self.denominators

    def __len__(self) -> int:
        return self.total_draws

    def support(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Distinct defined values as (numerators, denominators, weights), ascending."""
        cached = self._support_cache.get("support")
        if cached is not None:
            return cached
        if self.numerators.size == 0:
            empty = np.zeros(0, dtype=np.int64)
            result = (empty, empty, empty)
        else:
            pairs = np.stack([self.numerators, self.denominators], axis=1)
            uniq, inverse = np.unique(pairs, axis=0, return_inverse=True)
            w = np.bincount(inverse.reshape(-1), weights=self.weights, minlength=len(uniq)).astype(np.int64)
            order = np.argsort(uniq[:, 0] / uniq[:, 1], kind="stable")
            result = (uniq[order, 0], uniq[order, 1], w[order])
        self._support_cache["support"] = result
        return result

    def mean(self) -> Optional[Fraction]:
        """Exact weighted mean of the defined values; None when nothing is defined."""
        num, den, w = self.support()
        total = int(w.sum())
        if total == 0:
            return None
        acc = sum((Fraction(int(n), int(d)) * int(c) for n, d, c in zip(num, den, w)), Fraction(0))
        return acc / total

    def weight_above(self, numerator: int, denominator: int) -> int:
        """Total weight of defined values strictly greater than numerator/denominator (denominator > 0)."""
        above = self.numerators * denominator > numerator * self.denominators
        return int(self.weights[above].sum())

    def merge(self, other: NullDistribution) -> NullDistribution:
        """Multiset union of two partitions drawn for the same test."""
        if (self.kind, self.statistic, self.depth, self.length, self.hits) != (
            other.kind,
            other.statistic,
            other.depth,
            other.length,
            other.hits,
        ):
            raise ValueError("can only merge null distributions of the same test")
        draw_range = None
        if self.draw_range and other.draw_range:
            draw_range = (min(self.draw_range[0], other.draw_range[0]), max(self.draw_range[1], other.draw_range[1]))
        merged = NullDistribution(
            kind=self.kind,
            statistic=self.statistic,
            depth=self.depth,
            numerators=np.concatenate([self.numerators, other.numerators]),
            denominators=np.concatenate([self.denominators, other.denominators]),
            weights=np.concatenate([self.weights, other.weights]),
            undefined_count=self.undefined_count + other.undefined_count,
            total_draws=self.total_draws + other.total_draws,
            length=self.length,
            hits=self.hits,
            draw_range=draw_range,
        )
        if self.kind is NullKind.EXACT:
            return merged.collapsed()
        return merged

    def collapsed(self) -> NullDistribution:
        """Same distribution with one entry per distinct value."""
        num, den, w = self.support()
        return NullDistribution(
            kind=self.kind,
            statistic=self.statistic,
            depth=self.depth,
            numerators=num,
            denominators=den,
            weights=w,
            undefined_count=self.undefined_count,
            total_draws=self.total_draws,
            length=self.length,
            hits=self.hits,
            draw_range=self.draw_range,
        )


def from_counts(
    counts: DrawCounts,
    statistic: Statistic,
    depth: int,
    length: int,
    hits: Optional[int] = None,
    draw_range: Optional[DrawRange] = None,
) -> NullDistribution:
    """Monte Carlo null from per-draw conditional counts, draw order preserved."""
    num, den, defined = rational_values(counts, statistic)
    n = len(counts)
    return NullDistribution(
        kind=NullKind.MONTE_CARLO,
        statistic=statistic,
        depth=depth,
        numerators=num[defined],
        denominators=den[defined],
        weights=np.ones(int(defined.sum()), dtype=np.int64),
        undefined_count=int(n - defined.sum()),
        total_draws=n,
        length=length,
        hits=hits,
        draw_range=draw_range,
    )


# ----------------------------
# Draw generation
# ----------------------------


def _resolve_range(cfg: TestConfig, draw_range: Optional[DrawRange]) -> DrawRange:
    start, stop = draw_range if draw_range is not None else (0, cfg.resamples)
    if not 0 <= start <= stop:
        raise ValueError(f"invalid draw range {draw_range}")
    return start, stop


def _chunks(start: int, stop: int) -> Iterator[DrawRange]:
    for lo in range(start, stop, CHUNK_DRAWS):
        yield lo, min(lo + CHUNK_DRAWS, stop)


def permutation_draws(s: ShotString, seed: int, start: int, stop: int) -> np.ndarray:
    """Rows are uniformly random rearrangements of s (random-key shuffle)."""
    keys = uniforms(seed, start, stop, s.length)
    order = np.argsort(keys, axis=1, kind="stable")
    return s.as_array()[order]


def bernoulli_draws(length: int, p: float, seed: int, start: int, stop: int) -> np.ndarray:
    """Rows of i.i.d. shots: slot j of draw i is a hit when its uniform falls below p."""
    return (uniforms(seed, start, stop, length) < p).astype(np.int8)


def permutation_counts(s: ShotString, cfg: TestConfig, draw_range: Optional[DrawRange] = None) -> DrawCounts:
    if s.length == 0:
        raise EmptySequenceError("cannot permute an empty shot string")
    start, stop = _resolve_range(cfg, draw_range)
    counts = DrawCounts.empty()
    for lo, hi in _chunks(start, stop):
        counts = counts.concat(count_matrix(permutation_draws(s, cfg.seed, lo, hi), cfg.depth))
        logger.debug("permutation draws %d..%d of %s (L=%d)", lo, hi, cfg.label, s.length)
    return counts


def bernoulli_counts(
    length: int, p: Union[float, Fraction], cfg: TestConfig, draw_range: Optional[DrawRange] = None
) -> DrawCounts:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"hit probability must lie in [0, 1], got {p}")
    if length < 1:
        raise EmptySequenceError("Bernoulli strings need length >= 1")
    start, stop = _resolve_range(cfg, draw_range)
    counts = DrawCounts.empty()
    for lo, hi in _chunks(start, stop):
        counts = counts.concat(count_matrix(bernoulli_draws(length, p, cfg.seed, lo, hi), cfg.depth))
        logger.debug("bernoulli draws %d..%d of %s (n=%d, p=%.4f)", lo, hi, cfg.label, length, p)
    return counts


def permutation_null(s: ShotString, cfg: TestConfig, draw_range: Optional[DrawRange] = None) -> NullDistribution:
    """Statistic over cfg.resamples random rearrangements of s (hit count preserved).

    Draws are sampled with replacement; draw i depends only on (cfg.seed, i).
    """
    if cfg.null_model is not NullModel.PERMUTATION:
        raise ConfigError(f"permutation_null needs the permutation null model, got {cfg.null_model.value}")
    start, stop = _resolve_range(cfg, draw_range)
    counts = permutation_counts(s, cfg, (start, stop))
    return from_counts(counts, cfg.statistic, cfg.depth, s.length, s.hits, (start, stop))


def bernoulli_null(
    n: int, p: Union[float, Fraction], cfg: TestConfig, draw_range: Optional[DrawRange] = None
) -> NullDistribution:
    """Statistic over cfg.resamples i.i.d. Bernoulli(p) strings of length n."""
    if not cfg.null_model.is_bernoulli:
        raise ConfigError(f"bernoulli_null needs a Bernoulli null model, got {cfg.null_model.value}")
    start, stop = _resolve_range(cfg, draw_range)
    counts = bernoulli_counts(n, p, cfg, (start, stop))
    return from_counts(counts, cfg.statistic, cfg.depth, n, None, (start, stop))


# ----------------------------
# Exact enumeration
# ----------------------------


def arrangement_count(length: int, hits: int) -> int:
    if not 0 <= hits <= length:
        raise ValueError(f"hit count {hits} outside [0, {length}]")
    return math.comb(length, hits)


def check_cap(length: int, hits: int, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    total = arrangement_count(length, hits)
    if total > cap:
        raise CapExceeded(length, hits, total, cap)
    return total


def iter_arrangements(length: int, hits: int, chunk: int = CHUNK_ARRANGEMENTS) -> Iterator[np.ndarray]:
    """Every arrangement of `hits` ones in `length` slots, lexicographic in hit positions, in row blocks."""
    combos = itertools.combinations(range(length), hits)
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            return
        positions = np.array(block, dtype=np.intp).reshape(len(block), hits)
        rows = np.zeros((len(block), length), dtype=np.int8)
        rows[np.arange(len(block))[:, None], positions] = 1
        yield rows


def _exact_tally(
    length: int, hits: int, depth: int, statistics: Sequence[Statistic], cap: int
) -> Dict[Statistic, Tuple[Counter, int]]:
    total = check_cap(length, hits, cap)
    tallies: Dict[Statistic, Tuple[Counter, int]] = {st: (Counter(), 0) for st in statistics}
    for rows in iter_arrangements(length, hits):
        counts = count_matrix(rows, depth)
        for st in statistics:
            num, den, defined = rational_values(counts, st)
            tally, undefined = tallies[st]
            if defined.any():
                pairs, w = np.unique(np.stack([num[defined], den[defined]], axis=1), axis=0, return_counts=True)
                for (n, d), c in zip(pairs.tolist(), w.tolist()):
                    tally[(n, d)] += c
            tallies[st] = (tally, undefined + int((~defined).sum()))
    logger.debug("enumerated C(%d, %d) = %d arrangements at depth %d", length, hits, total, depth)
    return tallies


def _exact_from_tally(
    tally: Counter, undefined: int, statistic: Statistic, depth: int, length: int, hits: int
) -> NullDistribution:
    items = sorted(tally.items(), key=lambda kv: Fraction(kv[0][0], kv[0][1]))
    num = np.array([n for (n, _), _ in items], dtype=np.int64)
    den = np.array([d for (_, d), _ in items], dtype=np.int64)
    w = np.array([c for _, c in items], dtype=np.int64)
    return NullDistribution(
        kind=NullKind.EXACT,
        statistic=statistic,
        depth=depth,
        numerators=num,
        denominators=den,
        weights=w,
        undefined_count=undefined,
        total_draws=math.comb(length, hits),
        length=length,
        hits=hits,
    )


def exact_null_for(
    length: int, hits: int, depth: int, statistic: Statistic, cap: int = DEFAULT_ENUMERATION_CAP
) -> NullDistribution:
    (tally, undefined), = _exact_tally(length, hits, depth, [statistic], cap).values()
    return _exact_from_tally(tally, undefined, statistic, depth, length, hits)


def exact_null(s: ShotString, cfg: TestConfig) -> NullDistribution:
    """Exhaustive permutation null: each of the C(L, h) arrangements counted once.

    Raises CapExceeded when C(L, h) > cfg.enumeration_cap.
    """
    if cfg.null_model is not NullModel.PERMUTATION:
        raise ConfigError("exact enumeration applies to the permutation null only")
    return exact_null_for(s.length, s.hits, cfg.depth, cfg.statistic, cfg.enumeration_cap)


def exact_component_nulls(
    s: ShotString, depth: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Dict[Statistic, NullDistribution]:
    """Exact nulls of t_k and both of its components from one enumeration pass."""
    stats = (Statistic.T_K, Statistic.T_K_HIT, Statistic.T_K_MISS)
    tallies = _exact_tally(s.length, s.hits, depth, stats, cap)
    return {st: _exact_from_tally(t, u, st, depth, s.length, s.hits) for st, (t, u) in tallies.items()}


def null_mean_bias(
    length: int,
    hits: int,
    depth: int,
    statistic: Statistic = Statistic.T_K,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Optional[Fraction]:
    """Exact mean of the statistic over all arrangements where it is defined.

    None when no arrangement yields a defined value.
    """
    return exact_null_for(length, hits, depth, statistic, cap).mean()
