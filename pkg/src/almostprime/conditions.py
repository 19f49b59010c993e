"""Named inequality checks with both sides kept as enclosures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .rigor import Enclosure, Magnitude, enc

_RELATIONS = (">=", ">", "<=", "<")


@dataclass(frozen=True)
class Condition:
    """``lhs relation rhs``, passing only when it holds for every point of both enclosures."""

    name: str
    lhs: Enclosure
    relation: str
    rhs: Enclosure
    source: str = ""
    note: str = ""
    exact: Optional[bool] = None  # verdict of an exact comparison, when one was possible

    def __post_init__(self) -> None:
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def passed(self) -> bool:
        if self.exact is not None:
            return self.exact
        a, b = self.lhs, self.rhs
        if self.relation == ">=":
            return a.lo >= b.hi
        if self.relation == ">":
            return a.lo > b.hi
        if self.relation == "<=":
            return a.hi <= b.lo
        return a.hi < b.lo

    def __str__(self) -> str:
        mark = "ok" if self.passed else "FAILED"
        return f"{self.name}: {self.lhs} {self.relation} {self.rhs} [{mark}]"


def check(name: str, lhs, relation: str, rhs, source: str = "", note: str = "") -> Condition:
    return Condition(name, enc(lhs), relation, enc(rhs), source, note)


def check_magnitude(name: str, lhs: Magnitude, relation: str, rhs: Magnitude, source: str = "", note: str = "") -> Condition:
    """Compare two magnitudes exactly; the enclosures of their logarithms are kept for display."""
    c = lhs.compare(rhs)
    verdict = {">=": c >= 0, ">": c > 0, "<=": c <= 0, "<": c < 0}[relation]
    return Condition(name + " (log scale)", lhs.log(), relation, rhs.log(), source, note, verdict)


def first_failure(conditions: list[Condition]) -> Condition | None:
    for c in conditions:
        if not c.passed:
            return c
    return None


class ConditionFailed(ValueError):
    """A theorem was applied with one of its hypotheses failing."""

    def __init__(self, condition: Condition) -> None:
        super().__init__(f"condition failed: {condition}")
        self.condition = condition
