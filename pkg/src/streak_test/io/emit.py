from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import pandas as pd

from ..analysis import (
    BiasRow,
    ComponentHistograms,
    DatasetSummary,
    HistogramReport,
    ObservationResult,
    PValueSummary,
    Scope,
    SignificanceTable,
)
from ..analysis.summary import SUMMARY_ROWS
from ..resampling import NullKind, NullModel, PValue
from ..stats import Statistic, StatValue

SCHEMA_VERSION = "1.0"
P_PLACES = 6
STAT_PLACES = 6

Report = Union[
    Sequence[ObservationResult],
    DatasetSummary,
    SignificanceTable,
    HistogramReport,
    ComponentHistograms,
    Mapping[str, PValueSummary],
    Sequence[BiasRow],
]


def _dec(x: Any, places: int = STAT_PLACES) -> Optional[float]:
    if x is None:
        return None
    return round(float(x), places)


def _frac(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    return str(StatValue(Fraction(x)))


def _envelope(kind: str, **body: Any) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"schema_version": SCHEMA_VERSION, "kind": kind}
    doc.update(body)
    return doc


# ----------------------------
# Report -> document
# ----------------------------


def result_record(r: ObservationResult) -> Dict[str, Any]:
    p = r.p_value
    return {
        "key": r.key,
        "subject": r.subject,
        "game_id": r.game_id,
        "scope": r.scope.value,
        "statistic": r.statistic.value,
        "k": r.depth,
        "null": r.null_model.value,
        "null_kind": r.null_kind.value,
        "alpha": r.alpha,
        "seed": r.seed,
        "length": r.length,
        "hits": r.hits,
        "t": str(r.observed) if r.observed.is_defined else None,
        "t_decimal": _dec(r.observed.value),
        "p": _dec(p.value, P_PLACES) if p is not None else None,
        "exceed_count": p.exceed_count if p is not None else None,
        "defined_draws": p.defined_draws if p is not None else None,
        "total_draws": p.total_draws if p is not None else None,
        "significant": r.significant,
        "untestable_reason": r.untestable_reason,
    }


def results_document(results: Sequence[ObservationResult]) -> Dict[str, Any]:
    return _envelope("results", results=[result_record(r) for r in results])


def summary_document(summary: DatasetSummary) -> Dict[str, Any]:
    subjects = []
    for s in summary.subjects.values():
        subjects.append(
            {
                "subject": s.subject,
                "is_team": s.is_team,
                "games": s.games,
                "observations": s.observations,
                "total_hits": s.total_hits,
                "total_shots": s.total_shots,
                "season_pct": _dec(s.season_pct),
                "season_pct_fraction": _frac(s.season_pct),
                "avg_game_pct": _dec(s.avg_game_pct),
                "stdev_game_pct": _dec(s.stdev_game_pct),
                "avg_shots": _dec(s.avg_shots),
                "stdev_shots": _dec(s.stdev_shots),
            }
        )
    return _envelope("summary", stdev="population", subjects=subjects)


def significance_document(table: SignificanceTable) -> Dict[str, Any]:
    subjects = []
    for subject in table.subjects:
        subjects.append(
            {
                "subject": subject,
                "games": table.games[subject],
                "observations": table.observations[subject],
                "significant": {str(k): table.count(subject, k) for k in table.depths},
                "untestable": {str(k): table.untestable.get((subject, k), 0) for k in table.depths},
            }
        )
    return _envelope(
        "significance",
        alpha=table.alpha,
        statistic=table.statistic.value if table.statistic else None,
        null=table.null_model.value if table.null_model else None,
        depths=list(table.depths),
        subjects=subjects,
    )


def histogram_record(h: HistogramReport) -> Dict[str, Any]:
    return {
        "statistic": h.statistic.value,
        "k": h.depth,
        "null_kind": h.kind.value,
        "alpha": h.alpha,
        "edges": [_dec(e) for e in h.edges],
        "counts": list(h.counts),
        "observed": _frac(h.observed),
        "observed_decimal": _dec(h.observed),
        "threshold": _frac(h.threshold),
        "threshold_decimal": _dec(h.threshold),
        "mass_above": h.mass_above,
        "undefined_count": h.undefined_count,
        "total_draws": h.total_draws,
    }


def histogram_document(report: Union[HistogramReport, ComponentHistograms]) -> Dict[str, Any]:
    if isinstance(report, ComponentHistograms):
        parts = [report.total, report.hit, report.miss]
    else:
        parts = [report]
    return _envelope("histogram", histograms=[histogram_record(h) for h in parts])


def pvalues_document(report: Mapping[str, PValueSummary]) -> Dict[str, Any]:
    subjects = []
    for s in report.values():
        subjects.append(
            {
                "subject": s.subject,
                "count": s.count,
                "undefined_count": s.undefined_count,
                "empty": s.empty,
                "min": _dec(s.minimum, P_PLACES),
                "q1": _dec(s.q1, P_PLACES),
                "median": _dec(s.median, P_PLACES),
                "q3": _dec(s.q3, P_PLACES),
                "max": _dec(s.maximum, P_PLACES),
                "ecdf": [[_dec(p, P_PLACES), _dec(f, P_PLACES)] for p, f in s.ecdf],
            }
        )
    return _envelope("pvalues", subjects=subjects)


def bias_record(row: BiasRow) -> Dict[str, Any]:
    return {
        "L": row.length,
        "h": row.hits,
        "k": row.depth,
        "statistic": row.statistic.value,
        "mean_bias": _dec(row.mean),
        "mean_bias_fraction": _frac(row.mean),
        "defined_arrangements": row.defined_arrangements,
        "total_arrangements": row.total_arrangements,
    }


def bias_document(rows: Sequence[BiasRow]) -> Dict[str, Any]:
    return _envelope("bias", rows=[bias_record(r) for r in rows])


def to_document(report: Report) -> Dict[str, Any]:
    if isinstance(report, DatasetSummary):
        return summary_document(report)
    if isinstance(report, SignificanceTable):
        return significance_document(report)
    if isinstance(report, (HistogramReport, ComponentHistograms)):
        return histogram_document(report)
    if isinstance(report, Mapping):
        return pvalues_document(report)
    items = list(report)
    if items and all(isinstance(r, BiasRow) for r in items):
        return bias_document(items)
    if all(isinstance(r, ObservationResult) for r in items):
        return results_document(items)
    raise TypeError(f"cannot emit a report of type {type(report).__name__}")


# ----------------------------
# Document -> bytes
# ----------------------------


def _table_frame(doc: Dict[str, Any]) -> pd.DataFrame:
    kind = doc["kind"]
    if kind == "results":
        return pd.DataFrame(doc["results"], columns=_RESULT_COLUMNS)
    if kind == "summary":
        subjects = doc["subjects"]
        rows = [[label] + [s[attr] for s in subjects] for attr, label in SUMMARY_ROWS]
        return pd.DataFrame(rows, columns=["row"] + [s["subject"] for s in subjects])
    if kind == "significance":
        subjects = doc["subjects"]
        rows: List[List[Any]] = [
            ["Games"] + [s["games"] for s in subjects],
            ["Observations"] + [s["observations"] for s in subjects],
        ]
        rows += [[f"depth {k}"] + [s["significant"][str(k)] for s in subjects] for k in doc["depths"]]
        return pd.DataFrame(rows, columns=["row"] + [s["subject"] for s in subjects])
    if kind == "histogram":
        rows = []
        for h in doc["histograms"]:
            for left, right, count in zip(h["edges"][:-1], h["edges"][1:], h["counts"]):
                rows.append([h["statistic"], h["k"], left, right, count])
        return pd.DataFrame(rows, columns=["statistic", "k", "bin_left", "bin_right", "count"])
    if kind == "pvalues":
        cols = ["subject", "count", "undefined_count", "min", "q1", "median", "q3", "max"]
        return pd.DataFrame([[s[c] for c in cols] for s in doc["subjects"]], columns=cols)
    if kind == "bias":
        cols = ["L", "h", "k", "statistic", "mean_bias", "mean_bias_fraction", "defined_arrangements", "total_arrangements"]
        return pd.DataFrame([[r[c] for c in cols] for r in doc["rows"]], columns=cols)
    raise ValueError(f"unknown document kind {kind!r}")


_RESULT_COLUMNS = [
    "key",
    "subject",
    "game_id",
    "scope",
    "statistic",
    "k",
    "null",
    "null_kind",
    "alpha",
    "seed",
    "length",
    "hits",
    "t",
    "t_decimal",
    "p",
    "exceed_count",
    "defined_draws",
    "total_draws",
    "significant",
    "untestable_reason",
]


def document_bytes(doc: Dict[str, Any], fmt: str = "json") -> bytes:
    fmt = fmt.lower()
    if fmt == "json":
        return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "csv":
        frame = _table_frame(doc)
        frame.insert(0, "schema_version", doc["schema_version"])
        return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}; expected json or csv")


def emit_report(report: Report, fmt: str = "json") -> bytes:
    """Serialize a report as UTF-8 JSON or CSV with stable field order and a schema version."""
    return document_bytes(to_document(report), fmt)


def write_atomic(path: Union[str, Path], data: bytes) -> Path:
    """Write via a temporary file in the same directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=str(path.parent))
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


# ----------------------------
# Document -> results
# ----------------------------


def _stat_from_text(text: Optional[str]) -> StatValue:
    return StatValue(Fraction(text)) if text is not None else StatValue(None)


def result_from_record(rec: Mapping[str, Any]) -> ObservationResult:
    p = None
    if rec.get("total_draws") is not None and rec.get("untestable_reason") is None:
        exceed, total = int(rec["exceed_count"]), int(rec["total_draws"])
        p = PValue(exceed / total, exceed, int(rec["defined_draws"]), total)
    return ObservationResult(
        subject=rec["subject"],
        game_id=rec["game_id"],
        scope=Scope(rec["scope"]),
        key=rec["key"],
        statistic=Statistic(rec["statistic"]),
        depth=int(rec["k"]),
        null_model=NullModel(rec["null"]),
        null_kind=NullKind(rec["null_kind"]),
        alpha=float(rec["alpha"]),
        seed=int(rec["seed"]),
        length=int(rec["length"]),
        hits=int(rec["hits"]),
        observed=_stat_from_text(rec.get("t")),
        p_value=p,
        significant=bool(rec["significant"]),
        untestable_reason=rec.get("untestable_reason"),
    )


def results_from_document(doc: Mapping[str, Any]) -> List[ObservationResult]:
    if doc.get("kind") != "results":
        raise ValueError(f"expected a results document, got kind {doc.get('kind')!r}")
    return [result_from_record(rec) for rec in doc["results"]]


def load_results(path: Union[str, Path]) -> Tuple[Dict[str, Any], List[ObservationResult]]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Results file not found: {path}")
    doc = json.loads(path.read_text(encoding="utf-8"))
    return doc, results_from_document(doc)
