"""Truncated Taylor series with enclosure coefficients.

A :class:`Jet` of order ``n`` holds ``c_0, ..., c_n`` with
``c_k = g^{(k)}(x_0)/k!`` for the function ``g`` it represents.  When the
expansion point is itself an interval ``X``, each coefficient encloses the
range of ``g^{(k)}/k!`` over ``X``; the quadrature uses exactly this to bound
the Lagrange remainder.

Only the operations needed by the integrands in this package are provided.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import Callable, Sequence

from .enclosure import DomainError, Enclosure, enc


class Jet:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Enclosure]):
        self.coeffs = tuple(coeffs)

    @classmethod
    def variable(cls, point: Enclosure, order: int) -> Jet:
        zero, one = enc(0), enc(1)
        coeffs = [point] + [one] + [zero] * (order - 1)
        return cls(coeffs[: order + 1])

    @classmethod
    def constant(cls, value: Enclosure, order: int) -> Jet:
        return cls([value] + [enc(0)] * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> Enclosure:
        return self.coeffs[0]

    def _lift(self, other: object) -> Jet | None:
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jets of different order")
            return other
        if isinstance(other, Enclosure):
            return Jet.constant(other, self.order)
        if isinstance(other, (int, Decimal, Fraction)) and not isinstance(other, bool):
            return Jet.constant(enc(other), self.order)
        return None

    def __neg__(self) -> Jet:
        return Jet([-c for c in self.coeffs])

    def __add__(self, other: object) -> Jet:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Jet([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other: object) -> Jet:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Jet([a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other: object) -> Jet:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> Jet:
        if isinstance(other, (Enclosure, int, Decimal, Fraction)) and not isinstance(other, bool):
            s = enc(other)
            return Jet([c * s for c in self.coeffs])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        n = self.order
        out = []
        for k in range(n + 1):
            acc = a[0] * b[k]
            for j in range(1, k + 1):
                acc = acc + a[j] * b[k - j]
            out.append(acc)
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> Jet:
        if isinstance(other, (Enclosure, int, Decimal, Fraction)) and not isinstance(other, bool):
            s = enc(other)
            return Jet([c / s for c in self.coeffs])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        inv_b0 = b[0].reciprocal()
        q: list[Enclosure] = []
        for k in range(self.order + 1):
            acc = a[k]
            for j in range(1, k + 1):
                acc = acc - b[j] * q[k - j]
            q.append(acc * inv_b0)
        return Jet(q)

    def __rtruediv__(self, other: object) -> Jet:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: object) -> Jet:
        if isinstance(exponent, int) and not isinstance(exponent, bool):
            if exponent < 0:
                return 1 / (self ** (-exponent))
            result = Jet.constant(enc(1), self.order)
            base = self
            n = exponent
            while n:
                if n & 1:
                    result = result * base
                n >>= 1
                if n:
                    base = base * base
            return result
        e = enc(exponent)  # type: ignore[arg-type]
        return (self.log() * e).exp()

    def exp(self) -> Jet:
        a = self.coeffs
        b = [a[0].exp()]
        for k in range(1, self.order + 1):
            acc = a[1] * b[k - 1]
            for j in range(2, k + 1):
                acc = acc + (a[j] * j) * b[k - j]
            b.append(acc / k)
        return Jet(b)

    def log(self) -> Jet:
        a = self.coeffs
        if a[0].lo <= 0:
            raise DomainError(f"log of a jet with non-positive value {a[0]}")
        inv_a0 = a[0].reciprocal()
        b = [a[0].log()]
        for k in range(1, self.order + 1):
            acc = a[k] * k
            for j in range(1, k):
                acc = acc - (b[j] * j) * a[k - j]
            b.append(acc * inv_a0 / k)
        return Jet(b)

    def sqrt(self) -> Jet:
        a = self.coeffs
        r0 = a[0].sqrt()
        if r0.lo <= 0:
            raise DomainError("sqrt of a jet whose value touches zero")
        inv = (r0 * 2).reciprocal()
        r = [r0]
        for k in range(1, self.order + 1):
            acc = a[k]
            for j in range(1, k):
                acc = acc - r[j] * r[k - j]
            r.append(acc * inv)
        return Jet(r)

    def compose(self, series: Sequence[Enclosure]) -> Jet:
        """Evaluate ``sum_k series[k] * (self - self.value)**k``.

        ``series`` are Taylor coefficients of the outer function at the
        value of ``self``.
        """
        n = self.order
        h = Jet([enc(0)] + list(self.coeffs[1:]))
        result = Jet.constant(series[min(n, len(series) - 1)], n)
        for k in range(min(n, len(series) - 1) - 1, -1, -1):
            result = result * h + series[k]
        return result

    def __repr__(self) -> str:
        return "Jet(" + ", ".join(str(c) for c in self.coeffs) + ")"


def jet_from_derivative(
    x: Jet,
    value: Callable[[Enclosure], Enclosure],
    derivative: Callable[[Jet], Jet],
) -> Jet:
    """Jet of ``g(x)`` given ``g`` on enclosures and ``g'`` on jets."""
    n = x.order
    center = x.value
    dj = derivative(Jet.variable(center, max(n - 1, 0))) if n >= 1 else None
    series = [value(center)]
    if dj is not None:
        for k in range(1, n + 1):
            series.append(dj.coeffs[k - 1] / k)
    return x.compose(series)
