"""Deterministic grid search for parameters minimising the final K.

The objective is integer valued and piecewise constant, so the search is a
coordinate descent over finite grids.  Every candidate goes through the full
verifier in :mod:`almostprime.verify`; a K is reported only for candidates
whose run passed.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Any, Optional

from . import bounds_grh, bounds_uncond, verify
from .rigor import DomainError, Magnitude

UNCOND_AXES = ("loglog_X2", "M", "alpha", "delta", "u")
GRH_AXES = ("loglog_X2", "M", "alpha", "A", "u")


@dataclass(frozen=True)
class SearchSpace:
    """Finite grids per parameter plus the fixed inputs of every candidate.

    ``base`` is a complete UncondParams or GrhParams; grid values replace its
    fields.  X2 is searched through log log X2.
    """

    base: bounds_uncond.UncondParams | bounds_grh.GrhParams
    grids: dict[str, tuple] = field(default_factory=dict)
    grh_options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        axes = GRH_AXES if self.mode == "grh" else UNCOND_AXES
        clean: dict[str, tuple] = {}
        for name, values in self.grids.items():
            if name not in axes:
                raise DomainError(f"unknown search axis {name!r} for mode {self.mode}")
            if not values:
                raise DomainError(f"empty grid for {name}")
            cast = int if name == "M" else (lambda v: Decimal(str(v)))
            vals = tuple(sorted({cast(v) for v in values}))
            if name == "M" and vals[0] < 5:
                raise DomainError("M grid must respect M >= 5")
            if name == "delta" and not (0 < vals[0] and vals[-1] < 2):
                raise DomainError("delta grid must lie in (0, 2)")
            clean[name] = vals
        object.__setattr__(self, "grids", clean)

    @property
    def mode(self) -> str:
        return "grh" if isinstance(self.base, bounds_grh.GrhParams) else "uncond"

    @property
    def axes(self) -> list[str]:
        return [a for a in (GRH_AXES if self.mode == "grh" else UNCOND_AXES) if a in self.grids]

    def start(self) -> dict[str, Any]:
        """Grid point closest to the base parameters (first grid value on ties)."""
        point = {}
        for axis in self.axes:
            current = _current(self.base, axis)
            point[axis] = min(self.grids[axis], key=lambda v: (abs(Decimal(v) - current), v))
        return point

    def params_at(self, point: dict[str, Any]):
        changes = {}
        for axis, value in point.items():
            if axis == "loglog_X2":
                changes["X2"] = Magnitude("expexp", Decimal(value))
            else:
                changes[axis] = value
        return dataclasses.replace(self.base, **changes)


def _current(params, axis: str) -> Decimal:
    if axis == "loglog_X2":
        return params.X2.loglog().mid
    return Decimal(getattr(params, axis))


@dataclass(frozen=True)
class TraceEntry:
    point: tuple[tuple[str, str], ...]
    K: Optional[int]
    reason: Optional[str]
    failed_conditions: int


@dataclass(frozen=True)
class SearchResult:
    best_params: Any
    best_K: Optional[int]
    trace: tuple[TraceEntry, ...]
    nearest: Optional[TraceEntry] = None

    @property
    def feasible(self) -> bool:
        return self.best_K is not None


def evaluate(space: SearchSpace, point: dict[str, Any]) -> tuple[verify.Verification | None, TraceEntry]:
    key = tuple((a, str(point[a])) for a in space.axes)
    try:
        params = space.params_at(point)
        if space.mode == "grh":
            run = verify.verify_grh(params, **space.grh_options)
        else:
            run = verify.verify_uncond(params)
    except DomainError as exc:
        return None, TraceEntry(key, None, f"domain error: {exc}", 1 << 30)
    failed = sum(1 for c in run.conditions if not c.passed) + sum(1 for b in run.bounds if not b.passed)
    if run.passed:
        return run, TraceEntry(key, run.final_K, None, 0)
    return run, TraceEntry(key, None, run.binding(), max(failed, 1))


def _rank(entry: TraceEntry, point: dict[str, Any]) -> tuple:
    return (entry.K, Decimal(point.get("loglog_X2", 0)), int(point.get("M", 0)), entry.point)


def optimize(space: SearchSpace, budget: int = 50) -> SearchResult:
    """Coordinate descent from the grid point nearest the base parameters.

    Each sweep scans every axis in turn with the other coordinates fixed and
    moves to the best feasible value, ordered by (K, log log X2, M, point).
    Stops when a sweep makes no move or ``budget`` evaluations are spent.
    """
    if budget < 1:
        raise DomainError("budget must be at least 1")
    seen: dict[tuple, TraceEntry] = {}
    trace: list[TraceEntry] = []

    def run(point: dict[str, Any]) -> Optional[TraceEntry]:
        key = tuple((a, str(point[a])) for a in space.axes)
        if key in seen:
            return seen[key]
        if len(trace) >= budget:
            return None
        _, entry = evaluate(space, point)
        seen[key] = entry
        trace.append(entry)
        return entry

    current = space.start()
    best = run(current)
    best_point = dict(current) if best is not None and best.K is not None else None
    moved = True
    while moved and len(trace) < budget:
        moved = False
        for axis in space.axes:
            base_point = dict(best_point) if best_point is not None else dict(current)
            for value in space.grids[axis]:
                cand = dict(base_point, **{axis: value})
                entry = run(cand)
                if entry is None or entry.K is None:
                    continue
                if best_point is None or _rank(entry, cand) < _rank(best, best_point):
                    best, best_point, moved = entry, cand, True
    if best_point is None:
        nearest = min(trace, key=lambda e: (e.failed_conditions, e.point)) if trace else None
        return SearchResult(None, None, tuple(trace), nearest)
    return SearchResult(space.params_at(best_point), best.K, tuple(trace))


@dataclass(frozen=True)
class SensitivityRow:
    label: str
    K: Optional[int]
    binding: Optional[str]
    xi_over_L2: Optional[Decimal]


def sensitivity_report(params, perturbations: list[tuple[str, dict[str, Any]]], **grh_options) -> list[SensitivityRow]:
    """Re-run the verifier with single-field changes and report K and the binding condition.

    ``perturbations`` pairs a label with field replacements, e.g.
    ``("M = 60", {"M": 60})``.  The first row is always the unperturbed base.
    """
    rows = []
    for label, change in [("base", {})] + list(perturbations):
        try:
            p = dataclasses.replace(params, **change)
            run = verify.verify_grh(p, **grh_options) if isinstance(p, bounds_grh.GrhParams) else verify.verify_uncond(p)
        except DomainError as exc:
            rows.append(SensitivityRow(label, None, f"domain error: {exc}", None))
            continue
        xi_ratio = None
        for c in run.conditions:
            if c.name.startswith("1 - xi/log^2 N"):
                xi_ratio = (1 - c.lhs).hi
        rows.append(SensitivityRow(label, run.final_K if run.passed else None, run.binding(), xi_ratio))
    return rows
