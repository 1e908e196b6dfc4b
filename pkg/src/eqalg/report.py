"""Deterministic result trees rendered as text or as ``SECTION.KEY=VALUE`` lines."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence


def render_witness(names: Sequence[str], witness) -> str:
    """Element indices become names; anything else is printed as is."""
    if witness is None:
        return "-"
    if isinstance(witness, int):
        return names[witness]
    parts = []
    for w in witness:
        if isinstance(w, int) and not isinstance(w, bool) and 0 <= w < len(names):
            parts.append(names[w])
        elif isinstance(w, (tuple, list)):
            parts.append(render_witness(names, w))
        else:
            parts.append(str(w))
    return "(" + ",".join(parts) + ")"


def render_set(names: Sequence[str], members: Iterable[int]) -> str:
    return "{" + ",".join(names[x] for x in members) + "}"


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return str(value)


class Report:
    """Ordered sections of ordered key/value pairs; repeated keys are kept."""

    def __init__(self):
        self.sections: list[tuple[str, list[tuple[str, str]]]] = []
        self.failed = False

    def section(self, name: str) -> list[tuple[str, str]]:
        for s, items in self.sections:
            if s == name:
                return items
        items: list[tuple[str, str]] = []
        self.sections.append((name, items))
        return items

    def put(self, section: str, key: str, value) -> None:
        self.section(section).append((key, fmt(value)))

    def fail(self, section: Optional[str] = None, key: Optional[str] = None, value=None) -> None:
        self.failed = True
        if section is not None:
            self.put(section, key, value)

    def text(self) -> str:
        out = []
        for name, items in self.sections:
            out.append(f"[{name}]")
            width = max((len(k) for k, _ in items), default=0)
            for k, v in items:
                if "\n" in v:
                    out.append(f"  {k}:")
                    out.extend("    " + line for line in v.splitlines())
                else:
                    out.append(f"  {k.ljust(width)}  {v}")
        return "\n".join(out) + "\n"

    def dump(self) -> str:
        out = []
        for name, items in self.sections:
            for k, v in items:
                v = v.replace("\n", "\\n")
                out.append(f"{name}.{k}={v}")
        return "\n".join(out) + "\n"
