from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    """Outcome of a check: whether it holds, plus the first witness if not.

    ``info`` carries secondary verdicts and notes that belong in reports.
    """

    holds: bool
    witness: Any = None
    info: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds
