from __future__ import annotations

import datetime as dt
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import UntestableObservation
from ..resampling import (
    NullKind,
    NullModel,
    PValue,
    TestConfig,
    bernoulli_null,
    exact_null,
    p_value,
    permutation_null,
)
from ..stats import Outcome, ShotString, Statistic, StatValue, conditional_counts, evaluate

logger = logging.getLogger(__name__)


class Scope(Enum):
    Q1 = "q1"
    Q2 = "q2"
    Q3 = "q3"
    Q4 = "q4"
    GAME = "game"

    @property
    def order(self) -> int:
        return list(Scope).index(self)

    @property
    def is_quarter(self) -> bool:
        return self is not Scope.GAME


@dataclass(frozen=True)
class Observation:
    """One game-long (player) or quarter-long (team) shot string."""

    subject: str
    date: dt.date
    opponent: str
    scope: Scope
    shots: ShotString
    sequence_index: int = 0

    @property
    def game_id(self) -> str:
        return f"{self.date.isoformat()} {self.opponent}"

    @property
    def key(self) -> str:
        return f"{self.subject}|{self.date.isoformat()}|{self.scope.value}"

    @property
    def sort_key(self):
        return (self.subject, self.date, self.scope.order)


@dataclass(frozen=True)
class ObservationResult:
    """Outcome of one (observation, statistic, depth, null model) test."""

    subject: str
    game_id: str
    scope: Scope
    key: str
    statistic: Statistic
    depth: int
    null_model: NullModel
    null_kind: NullKind
    alpha: float
    seed: int
    length: int
    hits: int
    observed: StatValue
    p_value: Optional[PValue]
    significant: bool
    untestable_reason: Optional[str] = None

    def __post_init__(self) -> None:
        if self.significant and (self.p_value is None or not self.p_value.rejects(self.alpha)):
            raise ValueError(f"{self.key}: significant result needs a defined p-value below alpha")

    @property
    def testable(self) -> bool:
        return self.untestable_reason is None

    @property
    def date(self) -> str:
        return self.game_id.split(" ", 1)[0]

    @classmethod
    def untestable(
        cls, obs: Observation, cfg: TestConfig, reason: str, exact: bool = False, observed: Optional[StatValue] = None
    ) -> ObservationResult:
        """Result without a p-value; the observed statistic is still recorded when defined."""
        if observed is None:
            observed = evaluate(cfg.statistic, obs.shots, cfg.depth)
        return cls(
            subject=obs.subject,
            game_id=obs.game_id,
            scope=obs.scope,
            key=obs.key,
            statistic=cfg.statistic,
            depth=cfg.depth,
            null_model=cfg.null_model,
            null_kind=NullKind.EXACT if exact else NullKind.MONTE_CARLO,
            alpha=cfg.alpha,
            seed=cfg.seed,
            length=obs.shots.length,
            hits=obs.shots.hits,
            observed=observed,
            p_value=None,
            significant=False,
            untestable_reason=reason,
        )


def _undefined_reason(s: ShotString, cfg: TestConfig) -> str:
    if cfg.depth >= s.length:
        return f"depth {cfg.depth} needs at least {cfg.depth + 1} shots, string has {s.length}"
    missing = []
    if conditional_counts(s, cfg.depth, Outcome.HIT).realized_sets == 0:
        missing.append(f"{cfg.depth} hit(s)")
    if cfg.statistic is Statistic.T_K and conditional_counts(s, cfg.depth, Outcome.MISS).realized_sets == 0:
        missing.append(f"{cfg.depth} miss(es)")
    return f"{cfg.statistic.label} undefined: no shot follows a run of " + " or ".join(missing)


def analyze_observation(
    obs: Observation,
    cfg: TestConfig,
    season_pct_to_date: Optional[Fraction] = None,
    exact: bool = False,
) -> ObservationResult:
    """Observed statistic, p-value and verdict for one observation.

    Raises UntestableObservation when the statistic is undefined on the
    observed string or the season-to-date rate is missing.
    """
    s = obs.shots
    if s.length == 0:
        raise UntestableObservation(obs.key, "empty shot string")
    observed = evaluate(cfg.statistic, s, cfg.depth)
    if not observed.is_defined:
        raise UntestableObservation(obs.key, _undefined_reason(s, cfg))

    if cfg.null_model is NullModel.PERMUTATION:
        null = exact_null(s, cfg) if exact else permutation_null(s, cfg)
    elif cfg.null_model is NullModel.BERNOULLI_GAME:
        null = bernoulli_null(s.length, s.hit_rate, cfg)
    else:
        if season_pct_to_date is None:
            raise UntestableObservation(obs.key, "no earlier games for a season-to-date hit rate")
        null = bernoulli_null(s.length, season_pct_to_date, cfg)

    p = p_value(observed, null)
    logger.debug("%s %s observed=%s p=%s", obs.key, cfg.label, observed, p.value)
    return ObservationResult(
        subject=obs.subject,
        game_id=obs.game_id,
        scope=obs.scope,
        key=obs.key,
        statistic=cfg.statistic,
        depth=cfg.depth,
        null_model=cfg.null_model,
        null_kind=null.kind,
        alpha=cfg.alpha,
        seed=cfg.seed,
        length=s.length,
        hits=s.hits,
        observed=observed,
        p_value=p,
        significant=p.rejects(cfg.alpha),
    )


def season_pct_to_date(observations: Sequence[Observation], index: int) -> Optional[Fraction]:
    """Hit rate over the subject's observations from dates before observations[index].

    observations must be one subject's list in chronological order; None
    when nothing precedes the game.
    """
    if not 0 <= index < len(observations):
        raise IndexError(f"observation index {index} out of range")
    day = observations[index].date
    hits = shots = 0
    for prior in observations[:index]:
        if prior.date < day:
            hits += prior.shots.hits
            shots += prior.shots.length
    if shots == 0:
        return None
    return Fraction(hits, shots)
