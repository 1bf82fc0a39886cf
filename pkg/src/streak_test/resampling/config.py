from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Iterator, Mapping, Tuple

from ..errors import ConfigError
from ..stats import Statistic

DEFAULT_DEPTH = 2
DEFAULT_RESAMPLES = 10_000
DEFAULT_ALPHA = 0.05
DEFAULT_SEED = 20161205
DEFAULT_ENUMERATION_CAP = 10**7
DEFAULT_DEPTHS = (1, 2, 3)

_MAX_SEED = 2**64


class NullModel(Enum):
    PERMUTATION = "perm"
    BERNOULLI_GAME = "bern-game"
    BERNOULLI_SEASON = "bern-season"

    @property
    def is_bernoulli(self) -> bool:
        return self is not NullModel.PERMUTATION


class NullKind(Enum):
    MONTE_CARLO = "monte-carlo"
    EXACT = "exact"


TESTABLE_STATISTICS = (Statistic.T_K, Statistic.T_K_HIT)


def _coerce_enum(enum_cls, value, what: str):
    if isinstance(value, enum_cls):
        return value
    try:
        return enum_cls(str(value).strip().lower())
    except ValueError:
        choices = ", ".join(m.value for m in enum_cls)
        raise ConfigError(f"Unknown {what} {value!r}; expected one of: {choices}") from None


@dataclass(frozen=True)
class TestConfig:
    """One test: statistic, conditioning depth, null model and resampling settings."""

    __test__ = False  # not a pytest class

    depth: int = DEFAULT_DEPTH
    statistic: Statistic = Statistic.T_K
    null_model: NullModel = NullModel.PERMUTATION
    resamples: int = DEFAULT_RESAMPLES
    seed: int = DEFAULT_SEED
    alpha: float = DEFAULT_ALPHA
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP

    def __post_init__(self) -> None:
        object.__setattr__(self, "statistic", _coerce_enum(Statistic, self.statistic, "statistic"))
        object.__setattr__(self, "null_model", _coerce_enum(NullModel, self.null_model, "null model"))
        if self.statistic not in TESTABLE_STATISTICS:
            raise ConfigError(f"Statistic {self.statistic.value!r} is a component, not a test statistic")
        if int(self.depth) < 1:
            raise ConfigError(f"depth must be >= 1, got {self.depth}")
        if int(self.resamples) < 1:
            raise ConfigError(f"resamples must be >= 1, got {self.resamples}")
        if not 0 < float(self.alpha) < 1:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0 <= int(self.seed) < _MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if int(self.enumeration_cap) < 1:
            raise ConfigError(f"enumeration cap must be >= 1, got {self.enumeration_cap}")

    def with_seed(self, seed: int) -> TestConfig:
        return replace(self, seed=seed)

    @property
    def label(self) -> str:
        return f"{self.statistic.value}/k={self.depth}/{self.null_model.value}"


def _as_tuple(value: Any) -> Tuple[Any, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(value)
    return (value,)


@dataclass(frozen=True)
class TestGrid:
    """Cartesian product of statistics x depths x null models sharing one master seed."""

    __test__ = False

    statistics: Tuple[Statistic, ...] = (Statistic.T_K,)
    depths: Tuple[int, ...] = DEFAULT_DEPTHS
    null_models: Tuple[NullModel, ...] = (NullModel.PERMUTATION,)
    resamples: int = DEFAULT_RESAMPLES
    alpha: float = DEFAULT_ALPHA
    master_seed: int = DEFAULT_SEED
    exact: bool = False
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "statistics", tuple(_coerce_enum(Statistic, s, "statistic") for s in _as_tuple(self.statistics))
        )
        object.__setattr__(
            self, "null_models", tuple(_coerce_enum(NullModel, m, "null model") for m in _as_tuple(self.null_models))
        )
        try:
            object.__setattr__(self, "depths", tuple(int(k) for k in _as_tuple(self.depths)))
        except (TypeError, ValueError):
            raise ConfigError(f"depths must be integers, got {self.depths!r}") from None
        if not (self.statistics and self.depths and self.null_models):
            raise ConfigError("grid needs at least one statistic, depth and null model")
        if int(self.workers) < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.exact and any(m.is_bernoulli for m in self.null_models):
            raise ConfigError("exact enumeration applies to the permutation null only")
        # validate the shared settings once
        next(self.configs())

    def configs(self) -> Iterator[TestConfig]:
        for statistic, depth, null_model in itertools.product(self.statistics, self.depths, self.null_models):
            yield TestConfig(
                depth=depth,
                statistic=statistic,
                null_model=null_model,
                resamples=self.resamples,
                seed=self.master_seed,
                alpha=self.alpha,
                enumeration_cap=self.enumeration_cap,
            )

    def __len__(self) -> int:
        return len(self.statistics) * len(self.depths) * len(self.null_models)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> TestGrid:
        """Build a grid from CLI-style keys (k, stat, null, resamples, seed, alpha, exact, cap, workers)."""
        keymap: Dict[str, str] = {
            "k": "depths",
            "stat": "statistics",
            "null": "null_models",
            "resamples": "resamples",
            "seed": "master_seed",
            "alpha": "alpha",
            "exact": "exact",
            "cap": "enumeration_cap",
            "workers": "workers",
        }
        unknown = sorted(set(data) - set(keymap))
        if unknown:
            raise ConfigError(f"Unknown grid key(s): {', '.join(unknown)}; expected {', '.join(keymap)}")
        kwargs: Dict[str, Any] = {}
        for key, value in data.items():
            if value is None:
                continue
            field_name = keymap[key]
            if field_name in ("resamples", "master_seed", "enumeration_cap", "workers"):
                value = int(value)
            elif field_name == "alpha":
                value = float(value)
            elif field_name == "exact":
                value = bool(value)
            kwargs[field_name] = value
        return cls(**kwargs)
