"""Exactly specified positive reals that may be far too large to write out.

Thresholds such as ``exp(exp(7.816))`` only ever enter a computation through
their logarithm, so a :class:`Magnitude` keeps the defining expression and
produces ``log`` and ``log log`` enclosures directly.  Comparisons between
magnitudes of the same form compare the exact arguments, so range endpoints
such as ``exp(109)`` never suffer phantom gaps.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

from .enclosure import DomainError, Enclosure, PrecisionExhausted, enc

_KINDS = ("plain", "exp", "expexp", "pow10", "inf")

_NUMBER = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"


@dataclass(frozen=True)
class Magnitude:
    """A positive real given as ``x``, ``e^x``, ``e^(e^x)`` or ``10^x``."""

    kind: str
    arg: Decimal

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown magnitude kind {self.kind!r}")
        if self.kind == "plain" and self.arg <= 0:
            raise DomainError("plain magnitudes must be positive")

    @classmethod
    def parse(cls, text: str) -> Magnitude:
        """Parse ``4e18``, ``123.5``, ``e109``, ``ee7.816``, ``10^14.7`` or ``inf``."""
        s = text.strip().replace(" ", "")
        if s.lower() in ("inf", "infinity"):
            return cls("inf", Decimal(0))
        try:
            if s.startswith("ee") and re.fullmatch(_NUMBER, s[2:]):
                return cls("expexp", Decimal(s[2:]))
            if s.startswith("e") and re.fullmatch(_NUMBER, s[1:]):
                return cls("exp", Decimal(s[1:]))
            if s.startswith("10^") and re.fullmatch(_NUMBER, s[3:]):
                return cls("pow10", Decimal(s[3:]))
            if re.fullmatch(_NUMBER, s):
                return cls("plain", Decimal(s))
        except InvalidOperation:
            pass
        raise ValueError(f"cannot parse magnitude {text!r}")

    @classmethod
    def of(cls, x: "Magnitude | int | str | Decimal") -> Magnitude:
        if isinstance(x, Magnitude):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls("plain", Decimal(x))

    @property
    def is_infinite(self) -> bool:
        return self.kind == "inf"

    def log(self) -> Enclosure:
        if self.kind == "plain":
            return enc(self.arg).log()
        if self.kind == "exp":
            return enc(self.arg)
        if self.kind == "expexp":
            return enc(self.arg).exp()
        if self.kind == "pow10":
            return enc(self.arg) * enc(10).log()
        raise DomainError("log of an infinite magnitude")

    def loglog(self) -> Enclosure:
        if self.kind == "expexp":
            return enc(self.arg)
        return self.log().log()

    def value(self) -> Enclosure:
        if self.kind == "plain":
            return enc(self.arg)
        if self.kind == "inf":
            raise DomainError("value of an infinite magnitude")
        return self.log().exp()

    def as_integer(self) -> int | None:
        """The exact integer value, when this is a plain integer."""
        if self.kind == "plain" and self.arg == self.arg.to_integral_value():
            return int(self.arg)
        return None

    def compare(self, other: Magnitude) -> int:
        """Exact comparison: -1, 0 or 1."""
        if self.kind == "inf" or other.kind == "inf":
            return (self.kind == "inf") - (other.kind == "inf")
        if self.kind == other.kind:
            return (self.arg > other.arg) - (self.arg < other.arg)
        a, b = self.log(), other.log()
        if a.hi < b.lo:
            return -1
        if a.lo > b.hi:
            return 1
        raise PrecisionExhausted(f"cannot separate {self} and {other} at this precision")

    def __lt__(self, other: Magnitude) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: Magnitude) -> bool:
        return self.compare(other) <= 0

    def __str__(self) -> str:
        a = format(self.arg, "f") if self.kind != "plain" else str(self.arg)
        return {
            "plain": a,
            "exp": f"e{a}",
            "expexp": f"ee{a}",
            "pow10": f"10^{a}",
            "inf": "inf",
        }[self.kind]

