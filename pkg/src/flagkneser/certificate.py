"""Structured pass/fail records for machine-checked statements."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "inconclusive", "vacuous")


@dataclass
class Certificate:
    """Outcome of checking one statement on one input.

    ``vacuous`` means the statement's hypotheses were not met, so nothing was
    asserted; ``inconclusive`` means a needed value was unavailable.
    """

    lemma: str
    status: str
    hypotheses: dict[str, Any] = field(default_factory=dict)
    bound: int | None = None
    observed: int | None = None
    witness: tuple = ()
    notes: list[str] = field(default_factory=list)
    checked: int = 0

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown certificate status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def summary(self) -> str:
        parts = [f"{self.lemma}: {self.status}"]
        if self.checked:
            parts.append(f"checked={self.checked}")
        if self.bound is not None:
            parts.append(f"bound={self.bound}")
        if self.observed is not None:
            parts.append(f"observed={self.observed}")
        if self.witness:
            parts.append("witness=" + "; ".join(str(w) for w in self.witness))
        line = " ".join(parts)
        if self.notes:
            line += " (" + "; ".join(self.notes) + ")"
        return line
