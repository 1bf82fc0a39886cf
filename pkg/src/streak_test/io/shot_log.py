from __future__ import annotations

import datetime as dt
import io
import logging
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from ..analysis import Observation, Scope
from ..errors import RowError, ShotLogError
from ..stats import ShotString

logger = logging.getLogger(__name__)

HEADER = ("subject", "date", "opponent", "scope", "shots")
_SCOPES = {s.value: s for s in Scope}


def _parse_row(row: Dict[str, str]) -> Tuple[Optional[Observation], Optional[str]]:
    subject = row["subject"].strip()
    opponent = row["opponent"].strip()
    scope_text = row["scope"].strip().lower()
    shots_text = row["shots"].strip()
    if not subject:
        return None, "empty subject"
    try:
        date = dt.date.fromisoformat(row["date"].strip())
    except ValueError:
        return None, f"malformed date {row['date']!r} (expected YYYY-MM-DD)"
    if not opponent:
        return None, "empty opponent"
    scope = _SCOPES.get(scope_text)
    if scope is None:
        return None, f"unknown scope {row['scope']!r} (expected game or q1..q4)"
    if not shots_text:
        return None, "empty shots"
    for pos, ch in enumerate(shots_text, 1):
        if ch not in "01":
            return None, f"invalid character {ch!r} at position {pos} in shots"
    return Observation(subject, date, opponent, scope, ShotString.parse(shots_text)), None


def _read_frame(text: str, source: str) -> pd.DataFrame:
    try:
        frame = pd.read_csv(
            io.StringIO(text),
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError:
        raise ShotLogError([RowError(1, "missing header row " + ",".join(HEADER))], source) from None
    except pd.errors.ParserError as e:
        raise ShotLogError([RowError(0, f"unreadable CSV: {e}")], source) from None
    columns = tuple(str(c).strip().lower() for c in frame.columns)
    if columns != HEADER:
        raise ShotLogError([RowError(1, f"header must be {','.join(HEADER)}, got {','.join(columns)}")], source)
    frame.columns = list(HEADER)
    return frame.fillna("")


def parse_shot_log(
    text: str,
    lenient: bool = False,
    rejected: Optional[List[RowError]] = None,
    source: str = "<shot log>",
) -> List[Observation]:
    """Validated observations from `subject,date,opponent,scope,shots` CSV text.

    Observations come back sorted by subject, then date, then scope
    (q1 < q2 < q3 < q4 < game), with per-subject sequence_index assigned.
    Strict mode raises ShotLogError listing every bad row; lenient mode
    skips them, logs a warning and appends them to `rejected`.
    Row numbers count the header as row 1.
    """
    frame = _read_frame(text, source)
    errors: List[RowError] = []
    parsed: List[Tuple[int, Observation]] = []
    seen: Dict[Tuple[str, dt.date, Scope], int] = {}

    for i, row in enumerate(frame.to_dict(orient="records")):
        row_no = i + 2
        if not any(str(v).strip() for v in row.values()):
            continue
        obs, reason = _parse_row(row)
        if obs is None:
            errors.append(RowError(row_no, reason or "invalid row"))
            continue
        key = (obs.subject, obs.date, obs.scope)
        if key in seen:
            errors.append(RowError(row_no, f"duplicate {obs.key} (first seen at row {seen[key]})"))
            continue
        seen[key] = row_no
        parsed.append((row_no, obs))

    # a subject is either a player (game rows) or a team (quarter rows)
    scopes: Dict[str, Tuple[bool, int]] = {}
    consistent: List[Tuple[int, Observation]] = []
    for row_no, obs in parsed:
        first = scopes.setdefault(obs.subject, (obs.scope.is_quarter, row_no))
        if first[0] != obs.scope.is_quarter:
            kind = "quarter" if first[0] else "game"
            errors.append(RowError(row_no, f"{obs.subject} mixes game and quarter scopes (row {first[1]} is {kind})"))
            continue
        consistent.append((row_no, obs))

    if errors:
        errors.sort(key=lambda e: e.row)
        if not lenient:
            raise ShotLogError(errors, source)
        for e in errors:
            logger.warning("%s: skipped %s", source, e)
        if rejected is not None:
            rejected.extend(errors)

    ordered = sorted((obs for _, obs in consistent), key=lambda o: o.sort_key)
    out: List[Observation] = []
    index: Dict[str, int] = {}
    for obs in ordered:
        i = index.get(obs.subject, 0)
        out.append(replace(obs, sequence_index=i))
        index[obs.subject] = i + 1
    return out


def read_shot_log(
    path: Union[str, Path], lenient: bool = False, rejected: Optional[List[RowError]] = None
) -> List[Observation]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Shot log not found: {path}")
    return parse_shot_log(path.read_text(encoding="utf-8"), lenient=lenient, rejected=rejected, source=str(path))


def format_shot_log(observations: Sequence[Observation]) -> str:
    """CSV text that parse_shot_log reads back to the same observations."""
    frame = pd.DataFrame(
        [(o.subject, o.date.isoformat(), o.opponent, o.scope.value, str(o.shots)) for o in observations],
        columns=list(HEADER),
    )
    return frame.to_csv(index=False, lineterminator="\n")
