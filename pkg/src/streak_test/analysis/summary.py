from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..resampling import NullModel
from ..stats import Statistic
from .batch import group_by_subject
from .observation import Observation, ObservationResult

SUMMARY_ROWS = (
    ("games", "Games"),
    ("observations", "Observations"),
    ("season_pct", "Season Percentage"),
    ("avg_game_pct", "Average Game Percentage"),
    ("stdev_game_pct", "StDev Game Percentage"),
    ("avg_shots", "Average Number of Shots"),
    ("stdev_shots", "StDev Number of Shots"),
)


@dataclass(frozen=True)
class SubjectSummary:
    """Season shape for one subject. Standard deviations use the population convention (divide by N)."""

    subject: str
    is_team: bool
    games: int
    observations: int
    total_hits: int
    total_shots: int
    season_pct: Fraction
    avg_game_pct: Fraction
    stdev_game_pct: float
    avg_shots: Fraction
    stdev_shots: float


@dataclass(frozen=True)
class DatasetSummary:
    subjects: "OrderedDict[str, SubjectSummary]"

    def __getitem__(self, subject: str) -> SubjectSummary:
        return self.subjects[subject]

    def __len__(self) -> int:
        return len(self.subjects)

    def rows(self) -> List[Tuple[str, List[object]]]:
        """(row label, one value per subject) in the layout of a season summary table."""
        return [
            (label, [getattr(s, attr) for s in self.subjects.values()]) for attr, label in SUMMARY_ROWS
        ]


def _summarize_subject(subject: str, items: Sequence[Observation]) -> SubjectSummary:
    lengths = [o.shots.length for o in items]
    rates = [Fraction(o.shots.hits, o.shots.length) for o in items]
    total_shots = sum(lengths)
    total_hits = sum(o.shots.hits for o in items)
    return SubjectSummary(
        subject=subject,
        is_team=any(o.scope.is_quarter for o in items),
        games=len({o.date for o in items}),
        observations=len(items),
        total_hits=total_hits,
        total_shots=total_shots,
        season_pct=Fraction(total_hits, total_shots),
        avg_game_pct=sum(rates, Fraction(0)) / len(rates),
        stdev_game_pct=float(np.std(np.array([float(r) for r in rates]), ddof=0)),
        avg_shots=Fraction(total_shots, len(items)),
        stdev_shots=float(np.std(np.array(lengths, dtype=np.float64), ddof=0)),
    )


def summarize_dataset(dataset: Sequence[Observation]) -> DatasetSummary:
    return DatasetSummary(
        OrderedDict((subject, _summarize_subject(subject, items)) for subject, items in group_by_subject(dataset).items())
    )


@dataclass(frozen=True)
class SignificanceTable:
    """Significant observations per subject and conditioning depth.

    For every cell, tested + untestable equals the subject's observation count.
    """

    alpha: float
    depths: Tuple[int, ...]
    subjects: Tuple[str, ...]
    games: Dict[str, int]
    observations: Dict[str, int]
    significant: Dict[Tuple[str, int], int]
    tested: Dict[Tuple[str, int], int]
    untestable: Dict[Tuple[str, int], int]
    statistic: Optional[Statistic] = None
    null_model: Optional[NullModel] = None
    notes: List[str] = field(default_factory=list)

    def count(self, subject: str, depth: int) -> int:
        return self.significant.get((subject, depth), 0)

    def total(self) -> int:
        return sum(self.significant.values())


def _single(values: Iterable, what: str):
    distinct = set(values)
    if len(distinct) > 1:
        names = ", ".join(sorted(getattr(v, "value", str(v)) for v in distinct))
        raise ValueError(f"results mix several {what}s ({names}); pass {what}= to select one")
    return next(iter(distinct), None)


def significance_counts(
    results: Sequence[ObservationResult],
    alpha: float,
    statistic: Optional[Statistic] = None,
    null_model: Optional[NullModel] = None,
    depths: Optional[Sequence[int]] = None,
) -> SignificanceTable:
    """Count results with p < alpha per subject x depth for one (statistic, null model) variant."""
    selected = [
        r
        for r in results
        if (statistic is None or r.statistic is statistic) and (null_model is None or r.null_model is null_model)
    ]
    statistic = statistic or _single((r.statistic for r in selected), "statistic")
    null_model = null_model or _single((r.null_model for r in selected), "null_model")
    depth_list = tuple(depths) if depths else tuple(sorted({r.depth for r in selected}))

    subjects: List[str] = []
    keys: Dict[str, set] = {}
    dates: Dict[str, set] = {}
    significant: Dict[Tuple[str, int], int] = {}
    tested: Dict[Tuple[str, int], int] = {}
    untestable: Dict[Tuple[str, int], int] = {}
    for r in selected:
        if r.subject not in keys:
            subjects.append(r.subject)
            keys[r.subject] = set()
            dates[r.subject] = set()
        keys[r.subject].add(r.key)
        dates[r.subject].add(r.date)
        if r.depth not in depth_list:
            continue
        cell = (r.subject, r.depth)
        if not r.testable:
            untestable[cell] = untestable.get(cell, 0) + 1
            continue
        tested[cell] = tested.get(cell, 0) + 1
        if r.p_value is not None and r.p_value.rejects(alpha):
            significant[cell] = significant.get(cell, 0) + 1

    notes = []
    if any(abs(r.alpha - alpha) > 1e-12 for r in selected):
        notes.append(f"results were flagged at another alpha; counts recomputed at {alpha}")
    for subject in subjects:
        for k in depth_list:
            significant.setdefault((subject, k), 0)
            tested.setdefault((subject, k), 0)
            untestable.setdefault((subject, k), 0)

    return SignificanceTable(
        alpha=alpha,
        depths=depth_list,
        subjects=tuple(subjects),
        games={s: len(dates[s]) for s in subjects},
        observations={s: len(keys[s]) for s in subjects},
        significant=significant,
        tested=tested,
        untestable=untestable,
        statistic=statistic,
        null_model=null_model,
        notes=notes,
    )
