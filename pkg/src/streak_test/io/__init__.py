from .config_file import load_grid, load_grid_mapping
from .emit import (
    SCHEMA_VERSION,
    document_bytes,
    emit_report,
    load_results,
    results_from_document,
    to_document,
    write_atomic,
)
from .schema import check_document, load_schema
from .shot_log import HEADER, format_shot_log, parse_shot_log, read_shot_log

__all__ = [
    "HEADER",
    "SCHEMA_VERSION",
    "check_document",
    "document_bytes",
    "emit_report",
    "format_shot_log",
    "load_grid",
    "load_grid_mapping",
    "load_results",
    "load_schema",
    "parse_shot_log",
    "read_shot_log",
    "results_from_document",
    "to_document",
    "write_atomic",
]
