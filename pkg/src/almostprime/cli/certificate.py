"""Certificates: a canonical, exactly reproducible record of one verification run."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass
from decimal import Decimal
from pathlib import Path
from typing import Optional

from .. import __version__
from ..conditions import Condition
from ..small_n import Assembly
from ..verify import BoundRecord, Verification

MODES = ("uncond", "grh", "small_n", "constants", "sieve_fn", "optimize")


@dataclass(frozen=True)
class ConditionRecord:
    name: str
    lhs: tuple[str, str]
    relation: str
    rhs: tuple[str, str]
    passed: bool
    source: str
    note: str

    @classmethod
    def of(cls, c: Condition) -> ConditionRecord:
        return cls(c.name, (str(c.lhs.lo), str(c.lhs.hi)), c.relation, (str(c.rhs.lo), str(c.rhs.hi)),
                   c.passed, c.source, c.note)


@dataclass(frozen=True)
class BoundOut:
    name: str
    value_lo: str
    value_hi: str
    must_be_positive: bool

    @classmethod
    def of(cls, b: BoundRecord) -> BoundOut:
        return cls(b.name, str(b.value.lo), str(b.value.hi), b.must_be_positive)

    @property
    def passed(self) -> bool:
        return not self.must_be_positive or Decimal(self.value_lo) > 0


@dataclass(frozen=True)
class CoverageRecord:
    n_low: str
    n_high: str
    L_plus_1: int
    K: int
    mechanism: str


@dataclass(frozen=True)
class Certificate:
    tool_version: str
    mode: str
    params: tuple[tuple[str, tuple[str, ...]], ...]
    conditions: tuple[ConditionRecord, ...]
    bounds: tuple[BoundOut, ...]
    final_K: Optional[int]
    coverage: Optional[tuple[CoverageRecord, ...]]
    precision_digits: int
    binding: Optional[str]

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown certificate mode {self.mode!r}")

    @property
    def verdict(self) -> bool:
        return (
            self.binding is None
            and all(c.passed for c in self.conditions)
            and all(b.passed for b in self.bounds)
            and (self.final_K is not None or self.mode not in ("uncond", "grh"))
        )

    # --- serialization ----------------------------------------------------------

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = {k: list(v) for k, v in self.params}
        d["verdict"] = "pass" if self.verdict else "fail"
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        d = json.loads(text)
        d.pop("verdict", None)
        coverage = d["coverage"]
        return cls(
            tool_version=d["tool_version"],
            mode=d["mode"],
            params=tuple((k, tuple(v)) for k, v in sorted(d["params"].items())),
            conditions=tuple(
                ConditionRecord(c["name"], tuple(c["lhs"]), c["relation"], tuple(c["rhs"]), c["passed"],
                                c["source"], c["note"])
                for c in d["conditions"]
            ),
            bounds=tuple(BoundOut(**b) for b in d["bounds"]),
            final_K=d["final_K"],
            coverage=None if coverage is None else tuple(CoverageRecord(**r) for r in coverage),
            precision_digits=d["precision_digits"],
            binding=d["binding"],
        )


def _coverage(assembly: Optional[Assembly]) -> Optional[tuple[CoverageRecord, ...]]:
    if assembly is None:
        return None
    return tuple(CoverageRecord(str(r.n_low), str(r.n_high), r.L_plus_1, r.K, r.mechanism) for r in assembly.ranges)


def certificate_for(run: Verification, params: dict[str, list[str]], precision: int) -> Certificate:
    return Certificate(
        tool_version=__version__,
        mode=run.mode,
        params=tuple((k, tuple(v)) for k, v in sorted(params.items())),
        conditions=tuple(ConditionRecord.of(c) for c in run.conditions),
        bounds=tuple(BoundOut.of(b) for b in run.bounds),
        final_K=run.final_K,
        coverage=_coverage(run.assembly),
        precision_digits=precision,
        binding=run.binding(),
    )


def write_atomic(path: str | Path, text: str) -> None:
    """Write ``text`` with LF line endings so readers never see a partial file."""
    p = Path(path)
    fd, tmp = tempfile.mkstemp(dir=p.parent or ".", prefix=f".{p.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, p)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
