from __future__ import annotations

import logging
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import UntestableObservation
from ..resampling import NullModel, TestConfig, TestGrid, derive_seed
from .observation import Observation, ObservationResult, analyze_observation, season_pct_to_date

logger = logging.getLogger(__name__)

_WorkUnit = Tuple[Observation, TestConfig, Optional[Fraction], bool]


def group_by_subject(dataset: Sequence[Observation]) -> "OrderedDict[str, List[Observation]]":
    """Per-subject chronological lists, subjects in order of first appearance."""
    groups: "OrderedDict[str, List[Observation]]" = OrderedDict()
    for obs in dataset:
        groups.setdefault(obs.subject, []).append(obs)
    for subject, items in groups.items():
        groups[subject] = sorted(items, key=lambda o: o.sort_key)
    return groups


def observation_seed(master_seed: int, obs: Observation, cfg: TestConfig) -> int:
    return derive_seed(
        master_seed,
        obs.subject,
        obs.game_id,
        obs.scope.value,
        cfg.depth,
        cfg.statistic.value,
        cfg.null_model.value,
    )


def _season_rates(dataset: Sequence[Observation]) -> Dict[str, Optional[Fraction]]:
    rates: Dict[str, Optional[Fraction]] = {}
    for items in group_by_subject(dataset).values():
        for i, obs in enumerate(items):
            rates[obs.key] = season_pct_to_date(items, i)
    return rates


def _run_unit(unit: _WorkUnit) -> ObservationResult:
    obs, cfg, rate, exact = unit
    try:
        return analyze_observation(obs, cfg, rate, exact=exact)
    except UntestableObservation as e:
        logger.warning("untestable %s (%s): %s", obs.key, cfg.label, e.reason)
        return ObservationResult.untestable(obs, cfg, e.reason, exact=exact)


def batch_analyze(dataset: Sequence[Observation], grid: TestGrid) -> List[ObservationResult]:
    """Run every observation against every configuration of the grid.

    Results come back in dataset order, configurations varying fastest.
    Each unit draws from its own seed derived from the master seed and the
    unit's identity, so output does not depend on ordering or worker count.
    Untestable observations become results with untestable_reason set;
    CapExceeded in exact mode aborts the batch.
    """
    configs = list(grid.configs())
    needs_season = any(c.null_model is NullModel.BERNOULLI_SEASON for c in configs)
    rates = _season_rates(dataset) if needs_season else {}

    units: List[_WorkUnit] = []
    for obs in dataset:
        for cfg in configs:
            seeded = cfg.with_seed(observation_seed(grid.master_seed, obs, cfg))
            units.append((obs, seeded, rates.get(obs.key), grid.exact))

    logger.info("batch: %d observations x %d configurations, %d worker(s)", len(dataset), len(configs), grid.workers)
    if grid.workers > 1 and len(units) > 1:
        with ThreadPoolExecutor(max_workers=grid.workers) as pool:
            return list(pool.map(_run_unit, units))
    return [_run_unit(u) for u in units]
