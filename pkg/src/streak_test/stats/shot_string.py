from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Optional, Tuple, Union

import numpy as np

HIT_SYMBOL = "1"
MISS_SYMBOL = "0"


class Outcome(Enum):
    HIT = 1
    MISS = 0

    @property
    def symbol(self) -> str:
        return HIT_SYMBOL if self is Outcome.HIT else MISS_SYMBOL


@dataclass(frozen=True)
class ShotString:
    """Ordered hits (1) and misses (0) for one observation window."""

    outcomes: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        bad = [x for x in self.outcomes if x not in (0, 1)]
        if bad:
            raise ValueError(f"Shot outcomes must be 0 or 1, got {bad[0]!r}")
        # normalise bools / numpy ints to plain ints
        object.__setattr__(self, "outcomes", tuple(int(x) for x in self.outcomes))

    @classmethod
    def parse(cls, text: str) -> ShotString:
        text = text.strip()
        for pos, ch in enumerate(text, 1):
            if ch not in (HIT_SYMBOL, MISS_SYMBOL):
                raise ValueError(f"Invalid shot symbol {ch!r} at position {pos}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def of(cls, value: Union[str, Iterable[int], ShotString]) -> ShotString:
        if isinstance(value, ShotString):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(tuple(value))

    def __len__(self) -> int:
        return len(self.outcomes)

    def __str__(self) -> str:
        return "".join(HIT_SYMBOL if x else MISS_SYMBOL for x in self.outcomes)

    @property
    def length(self) -> int:
        return len(self.outcomes)

    @property
    def hits(self) -> int:
        return sum(self.outcomes)

    @property
    def misses(self) -> int:
        return self.length - self.hits

    @property
    def hit_rate(self) -> Optional[Fraction]:
        if not self.outcomes:
            return None
        return Fraction(self.hits, self.length)

    def complement(self) -> ShotString:
        return ShotString(tuple(1 - x for x in self.outcomes))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.outcomes, dtype=np.int8)

    @property
    def run_count(self) -> int:
        """Number of maximal blocks of identical outcomes."""
        return sum(1 for _ in groupby(self.outcomes))

    def longest_run(self, outcome: Outcome = Outcome.HIT) -> int:
        return max((len(list(g)) for v, g in groupby(self.outcomes) if v == outcome.value), default=0)
