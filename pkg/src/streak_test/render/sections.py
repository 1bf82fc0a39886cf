from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .items import Field, Item, ItemLike, _as_item
from .preferences import IndentationPreferences


def _norm_key(name: str) -> str:
    return " ".join(name.strip().lower().split())


@dataclass
class ReportSection(Item):
    """Titled block of report lines; nested sections indent one level deeper."""

    title: str
    items: List[Item] = field(default_factory=list)
    subtitle: Optional[str] = None
    bullet_style: Union[str, None, bool] = True
    _subindex: Dict[str, ReportSection] = field(default_factory=dict, init=False, repr=False)

    def __init__(
        self,
        title: str,
        items: Optional[Sequence[ItemLike]] = None,
        *,
        subtitle: Optional[str] = None,
        bullet_style: Union[str, None, bool] = True,
    ):
        self.title = title
        self.subtitle = subtitle
        self.bullet_style = bullet_style
        self.items = []
        self._subindex = {}
        for it in items or ():
            self.add_item(it)

    def add_item(self, item: Union[ItemLike, Tuple[str, object]]) -> None:
        if isinstance(item, ReportSection):
            self.items.append(item)
            self._subindex.setdefault(_norm_key(item.title), item)
            return
        if isinstance(item, tuple) and len(item) == 2:
            self.items.append(Field(str(item[0]), item[1]))
            return
        self.items.append(_as_item(item))

    def add_field(self, label: str, value: object) -> None:
        self.items.append(Field(label, value))

    def __getitem__(self, title: str) -> ReportSection:
        k = _norm_key(title)
        sec = self._subindex.get(k)
        if sec is None:
            sec = ReportSection(title)
            self.items.append(sec)
            self._subindex[k] = sec
        return sec

    def render(
        self,
        *,
        idx: int,
        level: int,
        prefs: IndentationPreferences,
        prev_style: Optional[str],
        ignore_bullets: bool,
    ) -> str:
        if ignore_bullets:
            heading_prefix = ""
            cur_style_for_children = prev_style
        else:
            cur_style = prefs.next_style(prev_style)
            heading_prefix = prefs.bullet_from_style(cur_style, idx)
            cur_style_for_children = cur_style

        left = " " * (prefs.spaces_per_level * level)
        hang = " " * (prefs.spaces_per_level * level + len(heading_prefix))
        lines = [left + heading_prefix + self.title]
        if self.subtitle:
            lines.append(hang + self.subtitle.strip())

        children_ignore = self.bullet_style is None
        for i, child in enumerate(self.items, 1):
            lines.append(
                child.render(
                    idx=i,
                    level=level + 1,
                    prefs=prefs,
                    prev_style=cur_style_for_children,
                    ignore_bullets=children_ignore,
                )
            )
        return "\n".join(lines)


@dataclass
class ReportDocument:
    """Top-level sections joined into the human-readable CLI output."""

    title: Optional[str] = None
    sections: List[ReportSection] = field(default_factory=list)
    footer: List[str] = field(default_factory=list)
    prefs: IndentationPreferences = field(default_factory=IndentationPreferences)

    def add_section(self, section: ReportSection) -> ReportSection:
        self.sections.append(section)
        return section

    def render(self) -> str:
        parts: List[str] = []
        if self.title:
            parts.append(self.title.strip())
            parts.append("")
        for i, sec in enumerate(self.sections, 1):
            parts.append(sec.render(idx=i, level=0, prefs=self.prefs, prev_style=None, ignore_bullets=False))
            if self.prefs.blank_line_between_top:
                parts.append("")
        parts.extend(self.footer)
        return "\n".join(parts).rstrip() + "\n"
