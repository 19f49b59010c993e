"""Verified adaptive quadrature.

On each panel ``[l, r]`` with representable centre ``m`` the integrand is
expanded to order ``n`` (even) at ``m``; the order-``n`` coefficient is also
evaluated over the whole panel, which bounds the Lagrange remainder.  Because
``(x - m)^n >= 0`` for even ``n``,

    int_l^r g = sum_{k<n} c_k(m) int (x-m)^k dx + [c_n(panel)] int (x-m)^n dx.

Panels whose enclosure is too wide are bisected.  Integrands that cannot be
evaluated on jets fall back to the order-0 bound ``(r - l) * g([l, r])``.
"""

from __future__ import annotations

from decimal import Decimal
from typing import Callable, Union

from .enclosure import DomainError, Enclosure, PrecisionExhausted, enc
from .jet import Jet

Integrand = Callable[[Union[Enclosure, Jet]], Union[Enclosure, Jet]]

DEFAULT_ORDER = 12
DEFAULT_MAX_PANELS = 20000


def _power_integral(a: Enclosure, b: Enclosure, k: int) -> Enclosure:
    """int_a^b x^k dx for numbers a <= b given as point enclosures."""
    return (b ** (k + 1) - a ** (k + 1)) / (k + 1)


def _panel(g: Integrand, l: Decimal, r: Decimal, order: int) -> Enclosure:
    panel = Enclosure(l, r)
    try:
        m = panel.mid
        centre = g(Jet.variable(enc(m), order))
        whole = g(Jet.variable(panel, order))
        if not isinstance(centre, Jet) or not isinstance(whole, Jet):
            raise TypeError
    except (TypeError, AttributeError):
        value = g(panel)
        if isinstance(value, Jet):
            value = value.value
        return value * panel.width_enclosure()
    a = enc(l) - m
    b = enc(r) - m
    total = enc(0)
    for k in range(order):
        total = total + centre.coeffs[k] * _power_integral(a, b, k)
    return total + whole.coeffs[order] * _power_integral(a, b, order)


def integrate(
    f: Integrand,
    a: Enclosure | int | Decimal,
    b: Enclosure | int | Decimal,
    tol: Decimal | str | float = Decimal("1e-20"),
    *,
    order: int = DEFAULT_ORDER,
    max_panels: int = DEFAULT_MAX_PANELS,
) -> Enclosure:
    """Enclosure of ``int_a^b f(t) dt``.

    ``a`` and ``b`` may be intervals; the integral over the uncertain end
    pieces is bounded by their width times the range of ``f`` there.

    Raises :class:`PrecisionExhausted` when the enclosure width still exceeds
    ``tol`` after ``max_panels`` panels.
    """
    if order % 2:
        raise ValueError("quadrature order must be even")
    ae, be = enc(a), enc(b)
    if ae.hi > be.lo:
        raise DomainError(f"integration limits overlap: {ae} and {be}")
    tol_d = Decimal(str(tol)) if not isinstance(tol, Decimal) else tol

    end_pieces = enc(0)
    if not ae.is_point():
        # int_a^{a.hi} f, with a in [a.lo, a.hi]: between 0 and the full piece
        rng = _range(f, Enclosure(ae.lo, ae.hi))
        end_pieces = end_pieces + rng * Enclosure(Decimal(0), ae.width)
    if not be.is_point():
        rng = _range(f, Enclosure(be.lo, be.hi))
        end_pieces = end_pieces + rng * Enclosure(Decimal(0), be.width)

    lo, hi = ae.hi, be.lo
    if lo == hi:
        return end_pieces
    span = enc(hi) - lo
    stack = [(lo, hi)]
    results: list[Enclosure] = []
    panels = 0
    budget = tol_d - end_pieces.width
    if budget <= 0:
        raise PrecisionExhausted("uncertain integration limits exceed the tolerance")
    while stack:
        l, r = stack.pop()
        panels += 1
        if panels > max_panels:
            raise PrecisionExhausted(
                f"quadrature did not reach width {tol_d} within {max_panels} panels"
            )
        val = _panel(f, l, r, order)
        share = budget * ((enc(r) - l) / span).lo
        if val.width <= share:
            results.append(val)
            continue
        m = Enclosure(l, r).mid
        if m <= l or m >= r:
            raise PrecisionExhausted("panel width reached working precision")
        stack.append((m, r))
        stack.append((l, m))
    total = end_pieces
    for v in results:
        total = total + v
    return total


def _range(f: Integrand, x: Enclosure) -> Enclosure:
    v = f(x)
    if isinstance(v, Jet):
        v = v.value
    return v
