"""Plain-text rendering of reports for the CLI's human format."""

from .items import Field, Item, ReportText
from .preferences import IndentationPreferences
from .sections import ReportDocument, ReportSection
from .text import (
    counts_section,
    render_bias,
    render_histogram,
    render_pvalues,
    render_results,
    render_significance,
    render_summary,
    result_section,
)

__all__ = [
    "Field",
    "IndentationPreferences",
    "Item",
    "ReportDocument",
    "ReportSection",
    "ReportText",
    "counts_section",
    "render_bias",
    "render_histogram",
    "render_pvalues",
    "render_results",
    "render_significance",
    "render_summary",
    "result_section",
]
