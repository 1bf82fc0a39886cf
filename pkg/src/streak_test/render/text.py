from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from ..analysis import (
    BiasRow,
    ComponentHistograms,
    DatasetSummary,
    HistogramReport,
    ObservationResult,
    PValueSummary,
    SignificanceTable,
)
from ..analysis.summary import SUMMARY_ROWS
from ..stats import Outcome, ShotString, StatValue, conditional_counts
from .sections import ReportDocument, ReportSection


def _exact(x: Union[Fraction, StatValue, None]) -> str:
    value = x.value if isinstance(x, StatValue) else x
    if value is None:
        return "undefined"
    text = str(StatValue(Fraction(value)))
    if value.denominator == 1:
        return text
    return f"{text} ({float(value):.6f})"


def _num(x: Optional[object], places: int = 4) -> str:
    if x is None:
        return "-"
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    return f"{float(x):.{places}f}"


def counts_section(s: ShotString, k: int) -> ReportSection:
    """Conditional counts behind t_k for one string."""
    sec = ReportSection(f"Counts (k={k})")
    for outcome, name in ((Outcome.HIT, "hits"), (Outcome.MISS, "misses")):
        c = conditional_counts(s, k, outcome)
        sec.add_item(
            f"after {k} {name}: {c.realized_sets} realized, {c.successes} followed by a hit, "
            f"{c.unrealized_sets} unrealized"
        )
    return sec


def result_section(r: ObservationResult) -> ReportSection:
    sec = ReportSection(r.key, subtitle=f"{r.statistic.label}, k={r.depth}, null={r.null_model.value} ({r.null_kind.value})")
    sec.add_field("shots", f"{r.length} ({r.hits} hits)")
    sec.add_field("observed", _exact(r.observed))
    if not r.testable:
        sec.add_field("untestable", r.untestable_reason)
        return sec
    p = r.p_value
    if p is not None:
        sec.add_field("p-value", f"{_num(p.value)} ({p.exceed_count}/{p.total_draws} draws exceed)")
        if p.defined_draws < p.total_draws:
            sec.add_field("undefined draws", p.total_draws - p.defined_draws)
    verdict = "reject" if r.significant else "do not reject"
    sec.add_field("verdict", f"{verdict} at alpha={r.alpha}")
    return sec


def render_results(results: Sequence[ObservationResult], title: Optional[str] = None) -> str:
    doc = ReportDocument(title=title)
    for r in results:
        doc.add_section(result_section(r))
    tested = sum(1 for r in results if r.testable)
    flagged = sum(1 for r in results if r.significant)
    doc.footer.append(f"{len(results)} test(s), {tested} testable, {flagged} significant")
    return doc.render()


def render_summary(summary: DatasetSummary) -> str:
    doc = ReportDocument(title="Season summary")
    for s in summary.subjects.values():
        sec = doc.add_section(ReportSection(s.subject, subtitle="team (quarters)" if s.is_team else None))
        for attr, label in SUMMARY_ROWS:
            sec.add_field(label, _num(getattr(s, attr)))
    return doc.render()


def render_significance(table: SignificanceTable) -> str:
    variant = []
    if table.statistic is not None:
        variant.append(table.statistic.label)
    if table.null_model is not None:
        variant.append(table.null_model.value)
    doc = ReportDocument(title=f"Significant at alpha={table.alpha} ({', '.join(variant) or 'all tests'})")
    for subject in table.subjects:
        sec = doc.add_section(ReportSection(subject))
        sec.add_field("Games", table.games[subject])
        sec.add_field("Observations", table.observations[subject])
        for k in table.depths:
            line = f"{table.count(subject, k)} of {table.tested[(subject, k)]} tested"
            skipped = table.untestable[(subject, k)]
            if skipped:
                line += f", {skipped} untestable"
            sec.add_field(f"k={k}", line)
    doc.footer.extend(table.notes)
    return doc.render()


def histogram_section(h: HistogramReport) -> ReportSection:
    sec = ReportSection(f"{h.statistic.label} null, k={h.depth} ({h.kind.value}, {h.total_draws} draws)")
    sec.add_field("observed", _exact(h.observed))
    sec.add_field("critical threshold", _exact(h.threshold))
    sec.add_field("mass above threshold", f"{h.mass_above} ({h.mass_above / h.total_draws:.4f})")
    sec.add_field("in critical region", "yes" if h.observed_in_critical_region else "no")
    if h.undefined_count:
        sec.add_field("undefined draws", h.undefined_count)
    peak = max(h.counts) if h.counts else 0
    bars = ReportSection("bins", bullet_style=None)
    for left, right, count in zip(h.edges[:-1], h.edges[1:], h.counts):
        if count:
            width = int(round(30 * count / peak)) if peak else 0
            bars.add_item(f"[{left:+.2f}, {right:+.2f}) {count:>7d} {'#' * width}")
    sec.add_item(bars)
    return sec


def render_histogram(report: Union[HistogramReport, ComponentHistograms]) -> str:
    parts = [report.total, report.hit, report.miss] if isinstance(report, ComponentHistograms) else [report]
    doc = ReportDocument()
    for h in parts:
        doc.add_section(histogram_section(h))
    return doc.render()


def render_pvalues(report: Mapping[str, PValueSummary]) -> str:
    doc = ReportDocument(title="p-value distributions")
    for s in report.values():
        sec = doc.add_section(ReportSection(s.subject))
        if s.empty:
            sec.add_item("no defined p-values")
        else:
            sec.add_field("count", s.count)
            for label, value in (("min", s.minimum), ("q1", s.q1), ("median", s.median), ("q3", s.q3), ("max", s.maximum)):
                sec.add_field(label, _num(value))
        if s.undefined_count:
            sec.add_field("undefined", s.undefined_count)
    return doc.render()


def render_bias(rows: Sequence[BiasRow]) -> str:
    doc = ReportDocument(title="Exact null means")
    by_length: "dict[int, ReportSection]" = {}
    for row in rows:
        sec = by_length.get(row.length)
        if sec is None:
            sec = doc.add_section(ReportSection(f"L={row.length}, k={row.depth}, {row.statistic.label}"))
            by_length[row.length] = sec
        sec.add_field(f"h={row.hits}", f"{_exact(row.mean)} over {row.defined_arrangements}/{row.total_arrangements}")
    return doc.render()
