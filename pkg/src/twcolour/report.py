from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Violation:
    """One broken rule, with the offending vertex, edge or node."""

    rule: str
    element: Any
    message: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.message}"


def format_report(violations: list[Violation]) -> str:
    if not violations:
        return "ok"
    return "\n".join(str(v) for v in violations)
