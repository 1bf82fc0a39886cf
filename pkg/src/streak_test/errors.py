from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence


class StreakTestError(Exception):
    """Base class for every error raised by streak_test."""


class ConfigError(StreakTestError, ValueError):
    pass


class EmptySequenceError(StreakTestError, ValueError):
    pass


class CapExceeded(StreakTestError):
    """Exact enumeration would visit more arrangements than the cap allows.

    The caller decides whether to fall back to Monte Carlo; nothing in the
    library switches silently.
    """

    def __init__(self, length: int, hits: int, arrangements: int, cap: int):
        self.length = length
        self.hits = hits
        self.arrangements = arrangements
        self.cap = cap
        super().__init__(
            f"C({length}, {hits}) = {arrangements} arrangements exceeds the enumeration cap of {cap}"
        )


class UntestableObservation(StreakTestError):
    def __init__(self, key: str, reason: str):
        self.key = key
        self.reason = reason
        super().__init__(f"{key}: {reason}")


@dataclass(frozen=True)
class RowError:
    row: int
    reason: str

    def __str__(self) -> str:
        return f"row {self.row}: {self.reason}"


class ShotLogError(StreakTestError, ValueError):
    def __init__(self, errors: Sequence[RowError], source: str = "<shot log>"):
        self.errors: List[RowError] = list(errors)
        self.source = source
        lines = [f"{source}: {len(self.errors)} invalid row(s)"]
        lines += [f"  {e}" for e in self.errors]
        super().__init__("\n".join(lines))
