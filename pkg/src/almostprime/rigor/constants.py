"""Literal and prime-derived constants used throughout the package."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from decimal import Decimal

from .enclosure import Enclosure, enc, get_precision

# Literature values to 70 digits; each enclosure has radius 1e-68.
_EULER_GAMMA = "0.5772156649015328606065120900824024310421593359399235988057672348848677"
_PI = "3.1415926535897932384626433832795028841971693993751058209749445923078164"
_MERTENS = "0.2614972128476427837554268386086958590515666482611992061920642139249245"
_LITERAL_RADIUS = "1e-68"

# Digit strings quoted in the source material, used to intersect the
# prime-derived enclosures (a transcription check in both directions).
TWIN_PRIME_QUOTED = (Decimal("0.66016"), Decimal("0.66017"))
ARTIN_QUOTED = (Decimal("0.37395"), Decimal("0.37396"))
SUM_INV_P_SQ_QUOTED = (Decimal("0.452247"), Decimal("0.452248"))


@functools.lru_cache(maxsize=None)
def _literal(digits: str, prec: int) -> Enclosure:
    return Enclosure.around(Decimal(digits), Decimal(_LITERAL_RADIUS))


def euler_gamma() -> Enclosure:
    return _literal(_EULER_GAMMA, get_precision())


def pi() -> Enclosure:
    return _literal(_PI, get_precision())


def mertens_constant() -> Enclosure:
    """Meissel-Mertens constant, the limit of sum_{p<x} 1/p - log log x."""
    return _literal(_MERTENS, get_precision())


@functools.lru_cache(maxsize=None)
def _e_gamma(prec: int) -> Enclosure:
    return euler_gamma().exp()


def e_gamma() -> Enclosure:
    return _e_gamma(get_precision())


@dataclass(frozen=True)
class FundamentalConstants:
    e_gamma: Enclosure
    mertens_M: Enclosure
    twin_prime: Enclosure
    artin: Enclosure
    sum_inv_p_sq: Enclosure


@functools.lru_cache(maxsize=None)
def _fundamental(prec: int, limit: int) -> FundamentalConstants:
    from .. import primes  # local import: primes depends on rigor

    twin = primes.twin_prime_constant(limit)
    artin = primes.artin_constant(limit)
    s2 = primes.sum_inv_p_sq_enclosure(limit)
    return FundamentalConstants(
        e_gamma=e_gamma(),
        mertens_M=mertens_constant(),
        twin_prime=twin.intersect(Enclosure(*TWIN_PRIME_QUOTED)),
        artin=artin.intersect(Enclosure(*ARTIN_QUOTED)),
        sum_inv_p_sq=s2.intersect(Enclosure(*SUM_INV_P_SQ_QUOTED)),
    )


def fundamental_constants(limit: int = 10**7) -> FundamentalConstants:
    """Constants recomputed from the primes below ``limit`` with tail bounds.

    The intersection with the quoted digit strings raises
    :class:`~almostprime.rigor.enclosure.DomainError` if a recomputed value
    disagrees with its quoted digits.
    """
    return _fundamental(get_precision(), limit)


def pi_squared_over(k: int) -> Enclosure:
    p = pi()
    return p * p / k


__all__ = [
    "FundamentalConstants",
    "fundamental_constants",
    "euler_gamma",
    "e_gamma",
    "pi",
    "mertens_constant",
    "pi_squared_over",
    "enc",
]
