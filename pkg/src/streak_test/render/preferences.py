from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass
class IndentationPreferences:
    spaces_per_level: int = 2
    progression: Tuple[str, ...] = ("none", "dash", "star")
    fallback: str = "dash"
    blank_line_between_top: bool = True

    def bullet_from_style(self, style: Optional[str], idx: int) -> str:
        if style is None or style == "none":
            return ""
        if style == "number":
            return f"{idx}. "
        if style == "dash":
            return "- "
        if style == "star":
            return "* "
        return style if style.endswith(" ") else style + " "

    def next_style(self, prev_style: Optional[str]) -> str:
        if prev_style is None:
            return self.progression[0]
        try:
            j = self.progression.index(prev_style) + 1
        except ValueError:
            return self.progression[0]
        return self.progression[j] if j < len(self.progression) else self.fallback
