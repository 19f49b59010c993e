"""Prime-factor counts for N below the sieve threshold, and assembly of the final K.

If every even N in a range is p + eta with eta square-free and coprime to the
first L + 1 primes, then eta < X2 has at most K prime factors, where K is the
largest count with p_{L+2} p_{L+3} ... p_{L+1+K} < X2, i.e.
theta(p_{K+L+1}) - theta(p_{L+1}) < log X2.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import primes
from .rigor import DomainError, Enclosure, Magnitude, PrecisionExhausted, enc

MECHANISMS = ("sieve_theorem", "primorial_coprime", "goldbach_verified")
MAX_FACTORS = 10**6


def _as_magnitude(x) -> Magnitude:
    return Magnitude.of(x)


def brute_force_k(X2: int, L_plus_1: int) -> int:
    """Largest m with prod_{i=1}^m p_{i+L+1} < X2, by exact integer products."""
    if L_plus_1 < 1:
        raise DomainError("L_plus_1 must be positive")
    m = 0
    product = 1
    index = L_plus_1 + 1
    while True:
        p = primes.nth_prime(index)
        if product * p >= X2:
            return m
        product *= p
        m += 1
        index += 1


def max_k_for_range(X2: Magnitude | int | str, L_plus_1: int) -> int:
    """Largest K >= 1 with theta(p_{K+L+1}) - theta(p_{L+1}) < log X2.

    Exact for integer X2; otherwise the running sum of log p is compared with
    the enclosure of log X2 and an undecided comparison raises
    PrecisionExhausted rather than guessing.
    """
    if L_plus_1 < 1:
        raise DomainError("L_plus_1 must be positive")
    X2 = _as_magnitude(X2)
    if X2.is_infinite:
        raise DomainError("X2 must be finite")
    exact = X2.as_integer()
    if exact is not None:
        K = brute_force_k(exact, L_plus_1)
    else:
        K = _k_from_logs(X2.log(), L_plus_1)
    if K < 1:
        raise DomainError(f"no K >= 1 satisfies the prime-product inequality for X2 = {X2}")
    return K


def _k_from_logs(log_x: Enclosure, L_plus_1: int) -> int:
    total = enc(0)
    K = 0
    index = L_plus_1 + 1
    while True:
        if K >= MAX_FACTORS:
            raise DomainError("K exceeds the supported range")
        p = primes.nth_prime(index)
        total = total + primes.log_of_int(p)
        if total.lo >= log_x.hi:
            return K
        if total.hi >= log_x.lo:
            raise PrecisionExhausted(f"cannot decide theta sum {total} against log X2 {log_x}")
        K += 1
        index += 1


@dataclass(frozen=True)
class RangeK:
    """[n_low, n_high) handled by ``mechanism`` with at most K prime factors."""

    n_low: Magnitude
    n_high: Magnitude
    L_plus_1: int
    K: int
    mechanism: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_low", _as_magnitude(self.n_low))
        object.__setattr__(self, "n_high", _as_magnitude(self.n_high))
        if self.mechanism not in MECHANISMS:
            raise DomainError(f"mechanism must be one of {MECHANISMS}")
        if not self.n_low < self.n_high:
            raise DomainError("n_low must be below n_high")
        if self.mechanism == "goldbach_verified" and self.K != 1:
            raise DomainError("the Goldbach range has K = 1")
        if self.K < 1:
            raise DomainError("K must be at least 1")


def primorial_range(n_low, n_high, L_plus_1: int) -> RangeK:
    """A range covered by the primorial-coprime representation with K from n_high."""
    return RangeK(n_low, n_high, L_plus_1, max_k_for_range(n_high, L_plus_1), "primorial_coprime")


class CoverageError(DomainError):
    """The supplied ranges leave part of (2, oo) uncovered."""


@dataclass(frozen=True)
class Assembly:
    K: int
    ranges: tuple[RangeK, ...]


def assemble_final_K(large_n_K: int, ranges: list[RangeK], X2: Magnitude | str | int) -> Assembly:
    """max of all K after checking that the ranges and [X2, oo) cover (2, oo).

    Range endpoints are compared exactly as magnitudes; touching ranges count as
    covering the shared endpoint.
    """
    X2 = _as_magnitude(X2)
    large = RangeK(X2, Magnitude.parse("inf"), 0, large_n_K, "sieve_theorem")
    ordered = sorted(ranges, key=lambda r: r.n_low.log().lo)
    reach = Magnitude.of(2)
    for r in ordered + [large]:
        if r.n_low.compare(reach) > 0:
            raise CoverageError(f"gap between {reach} and {r.n_low}")
        if r.n_high.compare(reach) > 0:
            reach = r.n_high
    if not reach.is_infinite:
        raise CoverageError(f"nothing covers N >= {reach}")
    K = max([large_n_K] + [r.K for r in ranges])
    return Assembly(K, tuple(ordered) + (large,))


def goldbach_range(limit: Magnitude | str = "4e18") -> RangeK:
    return RangeK(2, limit, 0, 1, "goldbach_verified")


def unconditional_ranges(X2: Magnitude | str) -> list[RangeK]:
    """Goldbach below 4e18 and six-prime coprime representations up to X2."""
    return [goldbach_range(), primorial_range("4e18", X2, 6)]


def grh_ranges(X2: Magnitude | str, steps: list[tuple[str, int]] | None = None) -> list[RangeK]:
    """Goldbach, then primorial-coprime ranges [a_i, a_{i+1}) with L+1 from ``steps``.

    ``steps`` lists (start, L_plus_1) pairs; the first range always starts at 4e18.
    """
    steps = steps or [("4e18", 6), ("e109", 15), ("e158", 22)]
    out = [goldbach_range()]
    bounds = [s for s, _ in steps] + [X2]
    for (start, lp1), end in zip(steps, bounds[1:]):
        out.append(primorial_range(start, end, lp1))
    return out


def coverage_table(assembly: Assembly) -> list[tuple[str, str, str, int]]:
    return [(str(r.n_low), str(r.n_high), r.mechanism, r.K) for r in assembly.ranges]


