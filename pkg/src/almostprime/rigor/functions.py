"""Elementary and special functions that accept enclosures or jets.

Integrands passed to :func:`~almostprime.rigor.quadrature.integrate` are
written with these functions so the same code evaluates on an
:class:`Enclosure` (range bounds) and on a :class:`Jet` (Taylor coefficients).
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import TypeVar, Union

from .constants import euler_gamma, pi
from .enclosure import DomainError, Enclosure, PrecisionExhausted, enc, get_precision
from .jet import Jet, jet_from_derivative

T = TypeVar("T", Enclosure, Jet)
Scalar = Union[Enclosure, Jet, int, Decimal, Fraction]


def _as(x: Scalar) -> Enclosure | Jet:
    if isinstance(x, (Enclosure, Jet)):
        return x
    return enc(x)


def exp(x: Scalar):
    return _as(x).exp()


def log(x: Scalar):
    return _as(x).log()


def sqrt(x: Scalar):
    return _as(x).sqrt()


def log_log(x: Scalar):
    y = _as(x)
    if isinstance(y, Enclosure):
        return y.log_log()
    return y.log().log()


# logarithmic integral ------------------------------------------------------


def log_integral(x: Enclosure | int | Decimal | Fraction) -> Enclosure:
    """li(x) = PV integral_0^x dt/log t, for x > 0 with 1 outside ``x``.

    Uses li(x) = gamma + log|log x| + sum_{k>=1} (log x)^k / (k k!) with an
    explicit geometric bound on the truncated tail.
    """
    xe = enc(x)
    if xe.lo <= 0:
        raise DomainError(f"li needs a positive argument, got {xe}")
    if xe.lo <= 1 <= xe.hi:
        raise DomainError(f"li argument straddles the branch point 1: {xe}")
    ell = xe.log()
    mag = max(abs(ell.lo), abs(ell.hi))
    eps = Decimal(10) ** (-get_precision())
    total = enc(0)
    term = enc(1)
    k = 0
    while True:
        k += 1
        term = term * ell / k
        total = total + term / k
        if k >= 2 * mag + 2:
            # tail: sum_{j>k} |l|^j/(j j!) <= 2 |l|^{k+1}/((k+1)(k+1)!)
            bound = (abs(term) * mag / (k + 1) / (k + 1) * 2).hi
            if bound < eps or k > 4000:
                break
    if k > 4000:
        raise PrecisionExhausted("li series did not converge")
    tail = Enclosure(bound.copy_negate(), bound)
    return euler_gamma() + abs(ell).log() + total + tail


# dilogarithm ---------------------------------------------------------------


def _li2_series(w: Enclosure) -> Enclosure:
    """sum_{k>=1} w^k/k^2 for w inside [0, 0.65]."""
    if w.lo < 0 or w.hi > Decimal("0.65"):
        raise DomainError(f"series branch of Li2 used outside [0, 0.65]: {w}")
    if w.hi == 0:
        return enc(0)
    eps = Decimal(10) ** (-get_precision())
    total = enc(0)
    power = enc(1)
    k = 0
    one_minus = 1 - enc(w.hi)
    while True:
        k += 1
        power = power * w
        total = total + power / (k * k)
        bound = (power * w.hi / ((k + 1) * (k + 1)) / one_minus).hi
        if bound < eps:
            break
        if k > 10000:
            raise PrecisionExhausted("Li2 series did not converge")
    return total + enc(0, bound)


def _li2_narrow(z: Enclosure) -> Enclosure:
    """Li2 on a narrow enclosure lying in one branch region of (-inf, 1]."""
    half = Decimal("0.5")
    if z.lo >= 0 and z.hi <= half:
        return _li2_series(z)
    if z.lo > half and z.hi <= 1:
        if z.hi == 1 and z.lo == 1:
            return pi() * pi() / 6
        # reflection: Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z)
        return pi() * pi() / 6 - z.log() * (1 - z).log() - _li2_series(1 - z)
    if z.lo >= -1 and z.hi < 0:
        # Landen: Li2(z) = -Li2(z/(z-1)) - log^2(1-z)/2
        w = z / (z - 1)
        lg = (1 - z).log()
        return -_li2_series(w) - lg * lg / 2
    if z.hi < -1:
        # inversion: Li2(z) = -pi^2/6 - log^2(-z)/2 - Li2(1/z)
        lg = (-z).log()
        return -(pi() * pi() / 6) - lg * lg / 2 - _li2_narrow(z.reciprocal())
    raise DomainError(f"Li2 enclosure {z} straddles a branch boundary")


def _li2_point(x: Decimal) -> Enclosure:
    return _li2_narrow(enc(x))


def _dilog_enclosure(z: Enclosure) -> Enclosure:
    if z.hi > 1:
        raise DomainError(f"real Li2 is only used on (-inf, 1], got {z}")
    # Li2 is increasing on (-inf, 1].
    lo = _li2_point(z.lo)
    hi = lo if z.is_point() else _li2_point(z.hi)
    return Enclosure(lo.lo, hi.hi)


def dilog(z: Scalar):
    """Real dilogarithm Li2(z) = -int_0^z log(1-t)/t dt for z <= 1."""
    x = _as(z)
    if isinstance(x, Enclosure):
        return _dilog_enclosure(x)
    return jet_from_derivative(x, _dilog_enclosure, lambda j: -((1 - j).log()) / j)
