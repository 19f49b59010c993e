"""Certified suprema of sums of positive terms over a ray ``[t0, oo)``.

Each :class:`RayTerm` supplies an interval extension ``value(T)`` and a
``tail(t)`` giving an upper bound for the term over ``[t, oo)`` (or ``None``
when no such bound can be certified from ``t``).  Typically ``tail`` is the
value at ``t`` together with a proof that the term is nonincreasing beyond
``t``.

:func:`ray_sup` pushes a cutoff ``t*`` out by doubling until every term has a
tail bound, then covers ``[t0, t*]`` by log-spaced cells.  On each cell a term
is bounded by the smaller of its hull over the cell and its tail bound from
the left end, so monotone terms cost nothing beyond one evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Callable, Optional, Sequence

from .enclosure import Enclosure, PrecisionExhausted, enc

DEFAULT_CELLS = 512
MAX_DOUBLINGS = 60


@dataclass(frozen=True)
class RayTerm:
    name: str
    value: Callable[[Enclosure], Enclosure]
    tail: Callable[[Decimal], Optional[Enclosure]]
    breakpoints: tuple[Decimal, ...] = ()


@dataclass(frozen=True)
class RaySup:
    bound: Enclosure
    cutoff: Decimal
    cells: int
    argmax: Decimal  # left end of the cell attaining the bound

    @property
    def upper(self) -> Decimal:
        return self.bound.hi


def _log_grid(lo: Decimal, hi: Decimal, cells: int, extra: Sequence[Decimal]) -> list[Decimal]:
    ratio = (enc(hi) / lo).log() / cells
    pts = {lo, hi}
    for i in range(1, cells):
        pts.add((ratio * i).exp().mid * lo)
    pts.update(b for b in extra if lo < b < hi)
    return sorted(p for p in pts if lo <= p <= hi)


def ray_sup(
    terms: Sequence[RayTerm],
    t0: Decimal | int | str,
    *,
    cells: int = DEFAULT_CELLS,
) -> RaySup:
    """Upper bound for ``sup_{t >= t0} sum(term(t))`` (all terms nonnegative)."""
    t0 = Decimal(str(t0)) if not isinstance(t0, Decimal) else t0
    if t0 <= 0:
        raise ValueError("ray_sup needs t0 > 0")
    cutoff = t0
    for _ in range(MAX_DOUBLINGS):
        tails = [term.tail(cutoff) for term in terms]
        if all(t is not None for t in tails):
            break
        cutoff *= 2
    else:
        stuck = [term.name for term, t in zip(terms, tails) if t is None]
        raise PrecisionExhausted(f"no certified tail bound for {', '.join(stuck)}")
    best = sum(tails, enc(0))
    argmax = cutoff
    if cutoff == t0:
        return RaySup(best, cutoff, 0, argmax)

    breaks = [b for term in terms for b in term.breakpoints]
    grid = _log_grid(t0, cutoff, cells, breaks)
    for lo, hi in zip(grid, grid[1:]):
        cell = Enclosure(lo, hi)
        total = enc(0)
        for term in terms:
            bound = term.value(cell)
            tail = term.tail(lo)
            if tail is not None and tail.hi < bound.hi:
                bound = tail
            total = total + bound
        if total.hi > best.hi:
            best, argmax = total, lo
    return RaySup(best, cutoff, len(grid) - 1, argmax)


def power_exp_tail(a: Decimal, b: Decimal, d: Decimal = Decimal(0)) -> Callable[[Decimal], bool]:
    """Nonincreasing test for ``t^a exp(b t + d sqrt t)`` on ``[t*, oo)``.

    The log-derivative is ``a/t + b + d/(2 sqrt t)``; with ``u = 1/sqrt t`` it is
    the quadratic ``b + (d/2) u + a u^2`` on ``(0, 1/sqrt t*]``, whose supremum
    is bounded casewise.
    """

    def ok(t: Decimal) -> bool:
        u = enc(1) / enc(t).sqrt()
        if a <= 0 and d <= 0:
            return b <= 0
        if a > 0 and d <= 0:
            # convex in u: the supremum sits at an end of (0, u*]
            at_end = u * u * a + u * d / 2 + b
            return b <= 0 and at_end.hi <= 0
        top = enc(b)
        if a > 0:
            top = top + u * u * a
        if d > 0:
            top = top + u * d / 2
        return top.hi <= 0

    return ok


def monotone_term(
    name: str,
    value: Callable[[Enclosure], Enclosure],
    nonincreasing_from: Callable[[Decimal], bool],
    breakpoints: tuple[Decimal, ...] = (),
) -> RayTerm:
    """A term whose tail bound is its value at ``t`` once it is certified nonincreasing."""

    def tail(t: Decimal) -> Optional[Enclosure]:
        if not nonincreasing_from(t):
            return None
        return value(enc(t))

    return RayTerm(name, value, tail, breakpoints)
