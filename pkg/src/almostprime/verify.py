"""End-to-end verification runs shared by the command line and the parameter search.

A run never raises for a mathematical failure: failed hypotheses, nonpositive
bounds and coverage gaps are recorded and make ``passed`` false.  Malformed
parameters still raise ``DomainError`` and an undecidable comparison raises
``PrecisionExhausted``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Optional

from . import bounds_grh, bounds_uncond, small_n
from .conditions import Condition
from .rigor import DomainError, Enclosure, Magnitude, enc


@dataclass(frozen=True)
class BoundRecord:
    name: str
    value: Enclosure
    must_be_positive: bool = False

    @property
    def passed(self) -> bool:
        return not self.must_be_positive or self.value.lo > 0


@dataclass
class Verification:
    mode: str
    conditions: list[Condition] = field(default_factory=list)
    bounds: list[BoundRecord] = field(default_factory=list)
    final_K: Optional[int] = None
    assembly: Optional[small_n.Assembly] = None
    failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return (
            self.failure is None
            and all(c.passed for c in self.conditions)
            and all(b.passed for b in self.bounds)
            and self.final_K is not None
        )

    def binding(self) -> Optional[str]:
        """The first reason the run does not verify, if any."""
        for c in self.conditions:
            if not c.passed:
                return c.name
        for b in self.bounds:
            if not b.passed:
                return f"{b.name} not positive"
        return self.failure


def _failed(name: str, note: str) -> Condition:
    return Condition(name, enc(0), ">=", enc(0), "precondition", note, exact=False)


def verify_uncond(params: bounds_uncond.UncondParams) -> Verification:
    out = Verification("uncond")
    out.conditions = bounds_uncond.check_conditions(params)
    if not all(c.passed for c in out.conditions):
        return out
    if params.C1_eps is None or params.C2_eps is None:
        raise DomainError("C1(eps) and C2(eps) are required inputs")
    tower = bounds_uncond.constant_tower(params)
    out.bounds = [BoundRecord(name, value) for name, value in tower.items()]
    res = bounds_uncond.theorem41_coefficients(params, tower, out.conditions)
    out.bounds.append(BoundRecord("coefficient, k1 < K0(x2)", res.coeff_small_k1, True))
    out.bounds.append(BoundRecord("coefficient, k1 >= K0(x2)", res.coeff_large_k1, True))
    try:
        out.assembly = small_n.assemble_final_K(params.M - 1, small_n.unconditional_ranges(params.X2), params.X2)
    except small_n.CoverageError as exc:
        out.failure = str(exc)
        return out
    out.final_K = out.assembly.K
    return out


@dataclass(frozen=True)
class RangeSpec:
    """The range [start, end) covered by representations coprime to the first L+1 primes.

    Ranges with ``L_plus_1 == 6`` starting at 4e18 rest on the unconditional
    six-prime result and need no B or C.
    """

    start: Magnitude
    end: Magnitude
    L_plus_1: int
    B: Optional[Magnitude] = None
    Cexp: Optional[Decimal] = None

    def needs_bound(self) -> bool:
        return not (self.L_plus_1 == 6 and self.start.compare(bounds_uncond.GOLDBACH_LIMIT) == 0)


def default_grh_ranges(X2: Magnitude) -> tuple[RangeSpec, ...]:
    e109, e158 = Magnitude.parse("e109"), Magnitude.parse("e158")
    return (
        RangeSpec(bounds_uncond.GOLDBACH_LIMIT, e109, 6),
        RangeSpec(e109, e158, 15, Magnitude.parse("10^14.7"), Decimal("0.13")),
        RangeSpec(e158, X2, 22, Magnitude.parse("10^23.1"), Decimal("0.13")),
    )


def verify_grh(
    params: bounds_grh.GrhParams,
    ranges: tuple[RangeSpec, ...] | list[RangeSpec] | None = None,
    *,
    fourth_group_log_factor: bool = True,
    exact_antiderivative: bool = False,
) -> Verification:
    out = Verification("grh")
    out.conditions = bounds_grh.grh_conditions(params)
    if all(c.passed for c in out.conditions):
        if params.C1_eps is None:
            raise DomainError("C1(eps) is a required input")
        res = bounds_grh.theorem510_coefficient(params, out.conditions)
        out.bounds.append(BoundRecord("c4G", res.pieces["c4G"]))
        out.bounds.append(BoundRecord("coefficient", res.coefficient, True))

    if ranges is None:
        ranges = default_grh_ranges(params.X2)
    covered = [small_n.goldbach_range()]
    for spec in sorted(ranges, key=lambda r: r.start.log().lo):
        end = spec.end
        label = f"range [{spec.start}, {end}) with L+1 = {spec.L_plus_1}"
        if spec.needs_bound():
            if spec.B is None or spec.Cexp is None:
                raise DomainError(f"{label} needs B and C")
            hp = bounds_grh.HathiParams(spec.L_plus_1 - 1, spec.start, spec.B, spec.Cexp,
                                        fourth_group_log_factor, exact_antiderivative)
            try:
                hb = bounds_grh.hathi_lower_bound(hp)
            except DomainError as exc:
                out.conditions.append(_failed(f"{label}: {exc}", "representation bound precondition"))
                continue
            out.bounds.append(BoundRecord(f"R_k(N)/N lower bound, {label}", hb.bound, True))
        if not spec.start < end:
            out.failure = f"{label} is empty"
            return out
        covered.append(small_n.primorial_range(spec.start, end, spec.L_plus_1))
    try:
        out.assembly = small_n.assemble_final_K(params.M - 1, covered, params.X2)
    except small_n.CoverageError as exc:
        out.failure = str(exc)
        return out
    out.final_K = out.assembly.K
    return out
