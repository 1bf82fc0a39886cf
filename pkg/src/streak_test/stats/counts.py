from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .shot_string import Outcome, ShotString


@dataclass(frozen=True)
class ConditionalCount:
    """Followers of length-k runs of one conditioning outcome.

    realized_sets: runs followed by at least one more shot
    successes: how many of those followers are hits
    unrealized_sets: 1 when the string ends inside a qualifying run
    """

    realized_sets: int = 0
    successes: int = 0
    unrealized_sets: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.successes <= self.realized_sets:
            raise ValueError("successes must lie in [0, realized_sets]")
        if self.unrealized_sets not in (0, 1):
            raise ValueError("only a terminal run can be unrealized")


def _check_depth(k: int) -> None:
    if k < 1:
        raise ValueError(f"Conditioning depth must be >= 1, got {k}")


def conditional_counts(s: ShotString, k: int, outcome: Outcome) -> ConditionalCount:
    """Scan s for positions preceded by k consecutive `outcome` symbols.

    Overlapping runs count separately: "111" with k=2 has two "11" sets,
    one realized and one unrealized. Depths k >= len(s) give all-zero counts.
    """
    _check_depth(k)
    if k >= s.length:
        return ConditionalCount()

    target = outcome.value
    realized = successes = 0
    run = 0  # trailing run of `target` ending just before the current position
    for x in s.outcomes:
        if run >= k:
            realized += 1
            successes += x
        run = run + 1 if x == target else 0
    return ConditionalCount(realized, successes, 1 if run >= k else 0)


@dataclass(frozen=True)
class DrawCounts:
    """Conditional counts for a batch of strings, one entry per row."""

    hit_realized: np.ndarray
    hit_successes: np.ndarray
    miss_realized: np.ndarray
    miss_successes: np.ndarray

    def __len__(self) -> int:
        return int(self.hit_realized.shape[0])

    def concat(self, other: DrawCounts) -> DrawCounts:
        return DrawCounts(
            np.concatenate([self.hit_realized, other.hit_realized]),
            np.concatenate([self.hit_successes, other.hit_successes]),
            np.concatenate([self.miss_realized, other.miss_realized]),
            np.concatenate([self.miss_successes, other.miss_successes]),
        )

    @classmethod
    def empty(cls) -> DrawCounts:
        z = np.zeros(0, dtype=np.int64)
        return cls(z, z, z, z)


def count_matrix(draws: np.ndarray, k: int) -> DrawCounts:
    """Vectorised conditional_counts over the rows of a 0/1 matrix."""
    _check_depth(k)
    draws = np.asarray(draws, dtype=np.int64)
    if draws.ndim != 2:
        raise ValueError("draws must be a 2-D array of shape (n_draws, length)")
    n, length = draws.shape
    if k >= length:
        z = np.zeros(n, dtype=np.int64)
        return DrawCounts(z, z.copy(), z.copy(), z.copy())

    csum = np.zeros((n, length + 1), dtype=np.int64)
    np.cumsum(draws, axis=1, out=csum[:, 1:])
    # window j covers positions j..j+k-1 and is followed by position j+k
    window = csum[:, k:length] - csum[:, : length - k]
    followers = draws[:, k:]
    after_hits = window == k
    after_misses = window == 0
    return DrawCounts(
        hit_realized=after_hits.sum(axis=1),
        hit_successes=(after_hits & (followers == 1)).sum(axis=1),
        miss_realized=after_misses.sum(axis=1),
        miss_successes=(after_misses & (followers == 1)).sum(axis=1),
    )
