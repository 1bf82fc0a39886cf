from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Mapping

from jsonschema import Draft7Validator

SCHEMA_DIR = Path(__file__).parent / "schemas"
KINDS = ("results", "summary", "significance", "histogram", "pvalues", "bias")


@lru_cache(maxsize=None)
def load_schema(kind: str) -> Dict[str, Any]:
    if kind not in KINDS:
        raise ValueError(f"unknown document kind {kind!r}; expected one of {', '.join(KINDS)}")
    return json.loads((SCHEMA_DIR / f"{kind}.schema.json").read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def _validator(kind: str) -> Draft7Validator:
    schema = load_schema(kind)
    Draft7Validator.check_schema(schema)
    return Draft7Validator(schema)


def _path(error: Any) -> str:
    out = "$"
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def check_document(doc: Mapping[str, Any]) -> List[str]:
    """Problems found validating `doc` against the shipped draft-07 schema for its kind.

    An empty list means the document conforms.
    """
    kind = doc.get("kind") if isinstance(doc, Mapping) else None
    if kind not in KINDS:
        return [f"$: unknown document kind {kind!r}"]
    errors = sorted(_validator(kind).iter_errors(dict(doc)), key=lambda e: list(map(str, e.absolute_path)))
    return [f"{_path(e)}: {e.message}" for e in errors]
