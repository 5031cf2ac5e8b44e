"""Deterministic text and JSON reports, with every object rendered by label."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .core_sets import SEIndex, SESubset, SoftSet, bits


@dataclass
class Report:
    command: str
    holds: bool
    summary: str
    witnesses: list = field(default_factory=list)
    slices: dict = field(default_factory=dict)
    caps: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    elapsed: float | None = None

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "command": self.command,
            "verdict": self.verdict,
            "summary": self.summary,
            "witnesses": plain(self.witnesses),
            "slices": plain(self.slices),
            "caps": plain(self.caps),
            "details": plain(self.details),
        }
        if timing and self.elapsed is not None:
            out["elapsed_seconds"] = round(self.elapsed, 6)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2, ensure_ascii=False)

    def to_text(self, timing: bool = True) -> str:
        d = self.as_dict(timing)
        lines = [f"command: {d['command']}", f"verdict: {d['verdict']} ({d['summary']})"]
        for title in ("slices", "details", "caps"):
            if d[title]:
                lines.append(f"{title}:")
                lines.extend(_text_block(d[title], 1))
        if d["witnesses"]:
            lines.append("witnesses:")
            for w in d["witnesses"]:
                lines.extend(_text_block(w, 1, bullet=True))
        if "elapsed_seconds" in d:
            lines.append(f"elapsed: {d['elapsed_seconds']:.3f}s")
        return "\n".join(lines) + "\n"


def _short(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_short(x)}" for k, x in v.items()) + "}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _text_block(obj, depth: int, bullet: bool = False) -> list[str]:
    pad = "  " * depth
    if not isinstance(obj, dict):
        return [f"{pad}{'- ' if bullet else ''}{_short(obj)}"]
    lines = []
    first = True
    for k, v in obj.items():
        lead = "- " if bullet and first else ("  " if bullet else "")
        first = False
        if isinstance(v, dict) and v and any(isinstance(x, (dict, list)) for x in v.values()):
            lines.append(f"{pad}{lead}{k}:")
            lines.extend(_text_block(v, depth + 2 if bullet else depth + 1))
        else:
            lines.append(f"{pad}{lead}{k}: {_short(v)}")
    return lines


def plain(obj: Any) -> Any:
    """Convert library values into JSON-ready data with labels instead of indices."""
    if isinstance(obj, SoftSet):
        return obj.to_labels()
    if isinstance(obj, SESubset):
        idx = SEIndex(obj.shape, cap=max(obj.shape.se_count(), 1))
        return [element_label(idx, i) for i in sorted(obj.members)]
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return [plain(x) for x in sorted(obj)]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def element_label(idx: SEIndex, i: int) -> str:
    return "(" + ", ".join(idx.labels(i)) + ")"


def se_mask_labels(idx: SEIndex, mask: int) -> list[str]:
    return [element_label(idx, i) for i in bits(mask)]
