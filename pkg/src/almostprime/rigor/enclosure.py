"""Outward-rounded interval arithmetic on arbitrary-precision decimals.

An :class:`Enclosure` is a closed interval ``[lo, hi]`` whose endpoints are
:class:`decimal.Decimal` values.  Every operation rounds the lower endpoint
toward minus infinity and the upper endpoint toward plus infinity, so the
result always contains the exact image of the operands.

Working precision is held in a context variable, which keeps evaluation pure
and thread-safe: two threads may use different precisions concurrently.
"""

from __future__ import annotations

import contextlib
import contextvars
import functools
from dataclasses import dataclass
from decimal import (
    MAX_EMAX,
    MIN_EMIN,
    ROUND_CEILING,
    ROUND_FLOOR,
    ROUND_HALF_EVEN,
    Context,
    Decimal,
    DivisionByZero,
    InvalidOperation,
)
from fractions import Fraction
from typing import Iterator, Union

DEFAULT_PRECISION = 60

_precision: contextvars.ContextVar[int] = contextvars.ContextVar(
    "almostprime_precision", default=DEFAULT_PRECISION
)

INF = Decimal("Infinity")
NEG_INF = Decimal("-Infinity")
ZERO = Decimal(0)
ONE = Decimal(1)


class DomainError(ValueError):
    """An operation was applied outside the domain of the function."""


class PrecisionExhausted(ArithmeticError):
    """A rigorous computation could not reach the requested accuracy."""


def _make_context(prec: int, rounding: str) -> Context:
    return Context(
        prec=prec,
        rounding=rounding,
        Emax=MAX_EMAX,
        Emin=MIN_EMIN,
        traps=[InvalidOperation, DivisionByZero],
    )


@functools.lru_cache(maxsize=None)
def _contexts(prec: int) -> tuple[Context, Context, Context]:
    return (
        _make_context(prec, ROUND_FLOOR),
        _make_context(prec, ROUND_CEILING),
        _make_context(prec, ROUND_HALF_EVEN),
    )


def get_precision() -> int:
    """Current working precision in significant decimal digits."""
    return _precision.get()


@contextlib.contextmanager
def working_precision(digits: int) -> Iterator[None]:
    """Temporarily set the working precision for enclosure arithmetic."""
    if digits < 10:
        raise ValueError("working precision must be at least 10 digits")
    token = _precision.set(int(digits))
    try:
        yield
    finally:
        _precision.reset(token)


def _ctx() -> tuple[Context, Context, Context]:
    return _contexts(_precision.get())


def _mul_dir(ctx: Context, x: Decimal, y: Decimal) -> Decimal:
    # 0 * inf is taken as 0: endpoint products of extended intervals.
    if x.is_zero() or y.is_zero():
        return ZERO
    return ctx.multiply(x, y)


def _pow_nonneg(ctx: Context, x: Decimal, n: int) -> Decimal:
    """x**n for x >= 0 and n >= 1, every multiplication rounded by ctx."""
    result = ONE
    base = x
    while n:
        if n & 1:
            result = _mul_dir(ctx, result, base)
        n >>= 1
        if n:
            base = _mul_dir(ctx, base, base)
    return result


Number = Union[int, Decimal, Fraction, float, str]


@dataclass(frozen=True, slots=True)
class Enclosure:
    """Closed interval of reals with decimal endpoints, ``lo <= hi``."""

    lo: Decimal
    hi: Decimal

    def __post_init__(self) -> None:
        lo, hi = self.lo, self.hi
        if not isinstance(lo, Decimal) or not isinstance(hi, Decimal):
            raise TypeError("Enclosure endpoints must be Decimal")
        if lo.is_nan() or hi.is_nan():
            raise DomainError("NaN endpoint")
        if lo > hi:
            raise DomainError(f"empty interval [{lo}, {hi}]")
        if lo == INF or hi == NEG_INF:
            raise DomainError("interval lies entirely at infinity")

    # construction -------------------------------------------------------

    @classmethod
    def exact(cls, x: Number) -> Enclosure:
        """Tightest enclosure of an exactly given number.

        Integers, decimal strings and floats convert exactly; fractions are
        rounded outward at the working precision.
        """
        if isinstance(x, Enclosure):
            return x
        if isinstance(x, Fraction):
            down, up, _ = _ctx()
            num, den = Decimal(x.numerator), Decimal(x.denominator)
            return cls(down.divide(num, den), up.divide(num, den))
        if isinstance(x, bool):
            raise TypeError("bool is not a number here")
        if isinstance(x, (int, float, str)):
            d = Decimal(x)
        elif isinstance(x, Decimal):
            d = x
        else:
            raise TypeError(f"cannot convert {type(x).__name__} to Enclosure")
        return cls(d, d)

    @classmethod
    def around(cls, center: Number, radius: Number) -> Enclosure:
        """``[center - radius, center + radius]`` rounded outward."""
        c, r = cls.exact(center), cls.exact(radius)
        return c + cls(r.hi.copy_negate(), r.hi)

    @classmethod
    def hull_of(cls, items: "list[Enclosure]") -> Enclosure:
        if not items:
            raise ValueError("hull of an empty collection")
        return cls(min(e.lo for e in items), max(e.hi for e in items))

    # basic queries ------------------------------------------------------

    @property
    def width(self) -> Decimal:
        _, up, _ = _ctx()
        return up.subtract(self.hi, self.lo)

    def width_enclosure(self) -> Enclosure:
        """``hi - lo`` as an enclosure (rounded outward)."""
        return Enclosure(self.hi, self.hi) - Enclosure(self.lo, self.lo)

    @property
    def mid(self) -> Decimal:
        """A representable point inside the interval (rounded midpoint)."""
        if self.lo == self.hi:
            return self.lo
        if self.lo.is_infinite() or self.hi.is_infinite():
            raise DomainError("midpoint of an unbounded interval")
        _, _, near = _ctx()
        m = near.divide(near.add(self.lo, self.hi), 2)
        return min(max(m, self.lo), self.hi)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Number | Enclosure) -> bool:
        other = x if isinstance(x, Enclosure) else Enclosure.exact(x)
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: Enclosure) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: Enclosure) -> Enclosure:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise DomainError(f"disjoint enclosures {self} and {other}")
        return Enclosure(lo, hi)

    def hull(self, other: Enclosure) -> Enclosure:
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def certainly_lt(self, other: Number | Enclosure) -> bool:
        return self.hi < _coerce(other).lo

    def certainly_le(self, other: Number | Enclosure) -> bool:
        return self.hi <= _coerce(other).lo

    def certainly_gt(self, other: Number | Enclosure) -> bool:
        return self.lo > _coerce(other).hi

    def certainly_ge(self, other: Number | Enclosure) -> bool:
        return self.lo >= _coerce(other).hi

    def is_positive(self) -> bool:
        return self.lo > 0

    # arithmetic ---------------------------------------------------------

    def __neg__(self) -> Enclosure:
        # copy_negate is exact; unary minus would round in the ambient context
        return Enclosure(self.hi.copy_negate(), self.lo.copy_negate())

    def __pos__(self) -> Enclosure:
        return self

    def __abs__(self) -> Enclosure:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(ZERO, max(self.lo.copy_negate(), self.hi))

    def __add__(self, other: object) -> Enclosure:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        down, up, _ = _ctx()
        return Enclosure(down.add(self.lo, o.lo), up.add(self.hi, o.hi))

    __radd__ = __add__

    def __sub__(self, other: object) -> Enclosure:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        down, up, _ = _ctx()
        return Enclosure(down.subtract(self.lo, o.hi), up.subtract(self.hi, o.lo))

    def __rsub__(self, other: object) -> Enclosure:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> Enclosure:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        down, up, _ = _ctx()
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        if a >= 0 and c >= 0:
            return Enclosure(_mul_dir(down, a, c), _mul_dir(up, b, d))
        pairs = ((a, c), (a, d), (b, c), (b, d))
        return Enclosure(
            min(_mul_dir(down, x, y) for x, y in pairs),
            max(_mul_dir(up, x, y) for x, y in pairs),
        )

    __rmul__ = __mul__

    def reciprocal(self) -> Enclosure:
        if self.lo <= 0 <= self.hi:
            raise DomainError(f"division by an interval containing zero: {self}")
        down, up, _ = _ctx()
        lo = ZERO if self.hi.is_infinite() else down.divide(ONE, self.hi)
        hi = ZERO if self.lo.is_infinite() else up.divide(ONE, self.lo)
        return Enclosure(lo, hi)

    def __truediv__(self, other: object) -> Enclosure:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if o.lo <= 0 <= o.hi:
            raise DomainError(f"division by an interval containing zero: {o}")
        if any(v.is_infinite() for v in (self.lo, self.hi, o.lo, o.hi)):
            return self * o.reciprocal()
        down, up, _ = _ctx()
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        pairs = ((a, c), (a, d), (b, c), (b, d))
        return Enclosure(
            min(down.divide(x, y) for x, y in pairs),
            max(up.divide(x, y) for x, y in pairs),
        )

    def __rtruediv__(self, other: object) -> Enclosure:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: object) -> Enclosure:
        if isinstance(exponent, int) and not isinstance(exponent, bool):
            return self._pow_int(exponent)
        e = _coerce_or_none(exponent)
        if e is None:
            return NotImplemented
        if e.is_point() and e.lo == e.lo.to_integral_value() and abs(e.lo) < 10**6:
            return self._pow_int(int(e.lo))
        if self.lo <= 0:
            raise DomainError(f"non-integer power of a non-positive interval: {self}")
        return (e * self.log()).exp()

    def __rpow__(self, base: object) -> Enclosure:
        b = _coerce_or_none(base)
        if b is None:
            return NotImplemented
        return b ** self

    def _pow_int(self, n: int) -> Enclosure:
        if n == 0:
            return Enclosure(ONE, ONE)
        if n < 0:
            return self._pow_int(-n).reciprocal()
        down, up, _ = _ctx()
        if n == 1:
            return self
        if self.lo >= 0:
            return Enclosure(_pow_nonneg(down, self.lo, n), _pow_nonneg(up, self.hi, n))
        if self.hi <= 0:
            lo_abs, hi_abs = self.hi.copy_negate(), self.lo.copy_negate()
            if n % 2 == 0:
                return Enclosure(_pow_nonneg(down, lo_abs, n), _pow_nonneg(up, hi_abs, n))
            return Enclosure(_pow_nonneg(up, hi_abs, n).copy_negate(), _pow_nonneg(down, lo_abs, n).copy_negate())
        # straddles zero
        if n % 2 == 0:
            return Enclosure(ZERO, _pow_nonneg(up, max(self.lo.copy_negate(), self.hi), n))
        return Enclosure(_pow_nonneg(up, self.lo.copy_negate(), n).copy_negate(), _pow_nonneg(up, self.hi, n))

    def min(self, other: Number | Enclosure) -> Enclosure:
        o = _coerce(other)
        return Enclosure(min(self.lo, o.lo), min(self.hi, o.hi))

    def max(self, other: Number | Enclosure) -> Enclosure:
        o = _coerce(other)
        return Enclosure(max(self.lo, o.lo), max(self.hi, o.hi))

    # elementary functions -------------------------------------------------

    def exp(self) -> Enclosure:
        _, _, near = _ctx()
        return Enclosure(_exp_down(near, self.lo), _exp_up(near, self.hi))

    def log(self) -> Enclosure:
        if self.lo <= 0:
            raise DomainError(f"log of a non-positive interval: {self}")
        _, _, near = _ctx()
        lo = near.next_minus(near.ln(self.lo))
        hi = INF if self.hi.is_infinite() else near.next_plus(near.ln(self.hi))
        return Enclosure(lo, hi)

    def sqrt(self) -> Enclosure:
        if self.lo < 0:
            raise DomainError(f"sqrt of a negative interval: {self}")
        _, _, near = _ctx()
        lo = max(ZERO, near.next_minus(near.sqrt(self.lo)))
        hi = INF if self.hi.is_infinite() else near.next_plus(near.sqrt(self.hi))
        return Enclosure(lo, hi)

    def log_log(self) -> Enclosure:
        if self.lo <= 1:
            raise DomainError(f"log log of an interval not above 1: {self}")
        return self.log().log()

    # display --------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Enclosure({self.lo}, {self.hi})"

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def to_float(self) -> float:
        """Midpoint as a float, for display only."""
        if self.lo.is_infinite() or self.hi.is_infinite():
            return float(self.hi if self.lo.is_infinite() else self.lo)
        return float(self.mid)


def _exp_down(near: Context, x: Decimal) -> Decimal:
    if x == NEG_INF:
        return ZERO
    if x == INF:
        return near.next_minus(INF)
    r = near.exp(x)
    if r.is_infinite():
        return near.next_minus(INF)
    return max(ZERO, near.next_minus(r))


def _exp_up(near: Context, x: Decimal) -> Decimal:
    if x == NEG_INF:
        return ZERO
    if x == INF:
        return INF
    r = near.exp(x)
    if r.is_infinite():
        return INF
    return near.next_plus(r)


def _coerce_or_none(x: object) -> Enclosure | None:
    if isinstance(x, Enclosure):
        return x
    if isinstance(x, (int, Decimal, Fraction, float)) and not isinstance(x, bool):
        return Enclosure.exact(x)
    return None


def _coerce(x: object) -> Enclosure:
    e = _coerce_or_none(x)
    if e is None:
        raise TypeError(f"cannot use {type(x).__name__} as an enclosure")
    return e


def enc(x: Number | Enclosure, hi: Number | None = None) -> Enclosure:
    """Shorthand constructor: ``enc(3)``, ``enc("0.1")``, ``enc(1, 2)``."""
    if hi is None:
        return x if isinstance(x, Enclosure) else Enclosure.exact(x)
    lo_e, hi_e = Enclosure.exact(x), Enclosure.exact(hi)  # type: ignore[arg-type]
    return Enclosure(lo_e.lo, hi_e.hi)


def hull(*items: Enclosure) -> Enclosure:
    return Enclosure.hull_of(list(items))
