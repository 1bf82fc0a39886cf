from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Union

import yaml  # PyYAML

from ..errors import ConfigError
from ..resampling import TestGrid

# ----------------------------
# YAML -> normalized grid
# ----------------------------


def load_grid_mapping(p: Union[str, Path]) -> Dict[str, Any]:
    """Read a grid file into a flat mapping of CLI-style keys.

    Example file:

        k: [1, 2, 3]
        stat: tk
        null: [perm, bern-game]
        resamples: 10000
        seed: 20161205
    """
    p = Path(p)
    if not p.exists():
        raise FileNotFoundError(f"Grid file not found: {p}")
    try:
        data = yaml.safe_load(p.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigError(f"{p}: not valid YAML ({e})") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{p}: grid YAML must be a mapping at the top level.")
    return {str(k).strip().lower(): _normalize_value(str(k), v) for k, v in data.items()}


def _normalize_value(key: str, value: Any) -> Any:
    if isinstance(value, dict):
        raise ConfigError(f"Grid key '{key}' must be a scalar or a list, not a mapping.")
    if isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                raise ConfigError(f"Grid key '{key}' must list scalars only.")
    return value


def load_grid(p: Union[str, Path]) -> TestGrid:
    return TestGrid.from_mapping(load_grid_mapping(p))
