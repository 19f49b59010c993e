"""Prime tables and the prime sums, products and Chebyshev theta values.

Small sums are accumulated term by term in enclosure arithmetic.  Sums and
products over millions of primes are formed in binary64 instead and then
widened by an a-priori bound on their rounding error (each IEEE operation is
correctly rounded, so ``n`` operations cost at most a factor ``(1+2^-53)^n``).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import numpy as np

from .rigor import DomainError, Enclosure, enc
from .rigor.magnitude import Magnitude

DEFAULT_BUDGET = 10**9
_SEGMENT = 1 << 22
# Below this many terms the sums are accumulated exactly in enclosures.
_EXACT_TERMS = 3000


class ResourceError(RuntimeError):
    """A sieve request exceeded the configured budget."""


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __post_init__(self) -> None:
        self.primes.setflags(write=False)

    def __len__(self) -> int:
        return len(self.primes)

    def below(self, x: int) -> np.ndarray:
        """Primes p < x."""
        return self.primes[: int(np.searchsorted(self.primes, x, side="left"))]

    def up_to(self, x: int) -> np.ndarray:
        """Primes p <= x."""
        return self.primes[: int(np.searchsorted(self.primes, x, side="right"))]


def _simple_sieve(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve(limit: int, budget: int = DEFAULT_BUDGET) -> PrimeTable:
    """All primes <= limit by a segmented sieve of Eratosthenes."""
    if limit > budget:
        raise ResourceError(f"sieve limit {limit} exceeds budget {budget}")
    if limit <= _SEGMENT:
        return PrimeTable(limit, _simple_sieve(limit))
    base = _simple_sieve(math.isqrt(limit) + 1)
    chunks = [base[base <= limit]]
    lo = int(base[-1]) + 1 if len(base) else 2
    odd_base = base[1:]
    while lo <= limit:
        hi = min(lo + _SEGMENT, limit + 1)
        flags = np.ones(hi - lo, dtype=bool)
        flags[lo % 2 :: 2] = False  # even numbers
        for p in odd_base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            flags[start - lo :: p] = False
        chunks.append(np.flatnonzero(flags).astype(np.int64) + lo)
        lo = hi
    return PrimeTable(limit, np.concatenate(chunks))


_cache: dict[str, PrimeTable] = {}


def prime_table(limit: int, budget: int = DEFAULT_BUDGET) -> PrimeTable:
    """Cached table covering at least ``limit``."""
    best = _cache.get("table")
    if best is not None and best.limit >= limit:
        return best
    table = sieve(max(limit, 1 << 16), budget)
    _cache["table"] = table
    return table


def nth_prime(n: int, budget: int = DEFAULT_BUDGET) -> int:
    """The n-th prime, 1-indexed."""
    if n < 1:
        raise DomainError("nth_prime needs n >= 1")
    if n < 6:
        return (2, 3, 5, 7, 11)[n - 1]
    # p_n < n (log n + log log n) for n >= 6
    bound = int(n * (math.log(n) + math.log(math.log(n)))) + 10
    return int(prime_table(bound, budget).primes[n - 1])


def first_primes(count: int) -> list[int]:
    if count <= 0:
        return []
    last = nth_prime(count)
    return [int(p) for p in prime_table(last).primes[:count]]


# exact logarithms -----------------------------------------------------------


def log_of_int(n: int) -> Enclosure:
    """Enclosure of log n for a positive integer of any size."""
    if n <= 0:
        raise DomainError("log of a non-positive integer")
    bits = n.bit_length()
    if bits <= 200:
        return enc(n).log()
    shift = bits - 200
    m = n >> shift
    # n in [m 2^shift, (m+1) 2^shift)
    tail = enc(shift) * enc(2).log()
    return Enclosure((enc(m).log() + tail).lo, (enc(m + 1).log() + tail).hi)


def _product(values: list[int]) -> int:
    while len(values) > 1:
        nxt = [values[i] * values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            nxt.append(values[-1])
        values = nxt
    return values[0] if values else 1


def _floor_of(x: Enclosure | int | Decimal) -> tuple[int, int]:
    if isinstance(x, int):
        return x, x
    e = enc(x)
    return int(math.floor(e.lo)), int(math.floor(e.hi))


def theta(x: Enclosure | int | Decimal) -> Enclosure:
    """Chebyshev theta(x) = sum_{p <= x} log p."""
    lo, hi = _floor_of(x)
    if lo < 2:
        if hi < 2:
            return enc(0)
        lo = 1
    t_hi = _theta_int(hi)
    if lo == hi:
        return t_hi
    t_lo = _theta_int(lo)
    return Enclosure(t_lo.lo, t_hi.hi)


@functools.lru_cache(maxsize=4096)
def _theta_int(x: int) -> Enclosure:
    if x < 2:
        return enc(0)
    ps = prime_table(x).up_to(x)
    return log_of_int(_product([int(p) for p in ps]))


def theta_range(i: int, j: int) -> Enclosure:
    """sum of log p_k for i < k <= j (1-indexed primes), i.e. theta(p_j) - theta(p_i)."""
    if j <= i:
        return enc(0)
    ps = first_primes(j)[i:]
    return log_of_int(_product(ps))


# reciprocal sums --------------------------------------------------------------


def _float_sum_enclosure(terms: np.ndarray, ops_per_term: int) -> Enclosure:
    """Enclose an exact positive sum whose terms were each formed in binary64.

    Each term carries relative error at most ``(1+u)^ops_per_term - 1`` and
    ``math.fsum`` returns the correctly rounded sum of the floats.
    """
    s = math.fsum(terms.tolist())
    return _widen(Fraction(s), _growth(ops_per_term + 1))


def _growth(m: int) -> Fraction:
    """Upper bound for (1 + 2^-53)^m - 1, namely m u / (1 - m u)."""
    return Fraction(m, 2**53 - m)


def _widen(value: Fraction, rel: Fraction) -> Enclosure:
    lo = enc(value * (1 - rel))
    hi = enc(value * (1 + rel))
    return Enclosure(lo.lo, hi.hi)


def prime_sum_reciprocal(x: int, budget: int = DEFAULT_BUDGET) -> Enclosure:
    """sum_{p < x} 1/p."""
    if x < 3:
        raise DomainError("prime_sum_reciprocal needs x >= 3")
    ps = prime_table(x, budget).below(x)
    if len(ps) <= _EXACT_TERMS:
        total = enc(0)
        for p in ps:
            total = total + enc(1) / int(p)
        return total
    return _float_sum_enclosure(1.0 / ps.astype(np.float64), 1)


def _sum_inv_sq_below(u: int) -> Enclosure:
    ps = prime_table(u).below(u)
    if len(ps) <= _EXACT_TERMS:
        total = enc(0)
        for p in ps:
            total = total + enc(1) / (int(p) * int(p))
        return total
    sq = ps.astype(np.float64) ** 2  # exact below 2^53
    if ps[-1] > 9 * 10**7:
        raise ResourceError("float path needs p^2 < 2^53")
    return _float_sum_enclosure(1.0 / sq, 1)


def sum_inv_p_sq_enclosure(limit: int = 10**7) -> Enclosure:
    """sum over all primes of 1/p^2: partial sum below ``limit`` plus tail.

    The tail sum_{p >= limit} 1/p^2 lies in [0, sum_{n >= limit} 1/n^2] and the
    latter is at most 1/(limit - 1).
    """
    partial = _sum_inv_sq_below(limit)
    return partial + Enclosure(Decimal(0), (enc(1) / (limit - 1)).hi)


def tail_sum_inv_p_sq(u: int) -> Enclosure:
    """sum_{p >= u} 1/p^2 = (sum_p 1/p^2) - sum_{p<u} 1/p^2."""
    from .rigor import fundamental_constants

    if u < 2:
        raise DomainError("tail_sum_inv_p_sq needs u >= 2")
    total = fundamental_constants().sum_inv_p_sq
    if u == 2:
        return total
    t = total - _sum_inv_sq_below(u)
    return Enclosure(max(t.lo, Decimal(0)), t.hi)


# products ------------------------------------------------------------------------


def _float_product_enclosure(num: np.ndarray, den: np.ndarray) -> Enclosure:
    """Enclose prod num_i/den_i for exact integer arrays below 2^53."""
    factors = num.astype(np.float64) / den.astype(np.float64)
    prod = 1.0
    for chunk in np.array_split(factors, max(1, len(factors) // 4096)):
        for f in chunk.tolist():
            prod *= f
    n = len(factors)
    return _widen(Fraction(prod), _growth(2 * n + 1))


def twin_prime_partial(u: int) -> Enclosure:
    """prod_{2 < p < u} (p-1)^2 / (p(p-2))."""
    if u <= 3:
        raise DomainError("twin_prime_partial needs u > 3")
    ps = prime_table(u).below(u)[1:]
    if len(ps) <= _EXACT_TERMS:
        num = _product([(int(p) - 1) ** 2 for p in ps])
        den = _product([int(p) * (int(p) - 2) for p in ps])
        return enc(Fraction(num, den))
    if ps[-1] > 9 * 10**7:
        raise ResourceError("float path needs p^2 < 2^53")
    return _float_product_enclosure((ps - 1) ** 2, ps * (ps - 2))


def twin_prime_constant(limit: int = 10**7) -> Enclosure:
    """prod_{p>2} (1 - 1/(p-1)^2).

    The factors with p >= limit multiply to a number in [1 - 1/(limit-2), 1].
    """
    partial = twin_prime_partial(limit).reciprocal()
    tail = Enclosure((1 - enc(1) / (limit - 2)).lo, Decimal(1))
    return partial * tail


def artin_constant(limit: int = 10**7) -> Enclosure:
    """prod_p (1 - 1/(p(p-1))), with the tail beyond ``limit`` in [1 - 1/(limit-1), 1]."""
    ps = prime_table(limit).below(limit)
    if len(ps) <= _EXACT_TERMS:
        num = _product([int(p) * int(p) - int(p) - 1 for p in ps])
        den = _product([int(p) * (int(p) - 1) for p in ps])
        partial = enc(Fraction(num, den))
    else:
        partial = _float_product_enclosure(ps * ps - ps - 1, ps * (ps - 1))
    tail = Enclosure((1 - enc(1) / (limit - 1)).lo, Decimal(1))
    return partial * tail


def primorial(count: int) -> int:
    """Product of the first ``count`` primes."""
    if count < 1:
        raise DomainError("primorial needs at least one prime")
    return _product(first_primes(count))


def _factor_small(n: int, limit: int = 10**6) -> list[int]:
    """Prime factors of n by trial division; the cofactor must be 1 or below limit^2."""
    out = []
    for p in prime_table(limit).primes:
        p = int(p)
        if p * p > n:
            break
        while n % p == 0:
            out.append(p)
            n //= p
    if n > 1:
        if n >= limit * limit:
            raise DomainError("cannot factor: cofactor beyond the trial-division range")
        out.append(n)
    return out


def artin_style_factor(k: int) -> Fraction:
    """prod_{q | k/2} (1 - (q-1)/(q^2-q-1)) as an exact fraction."""
    if k % 2:
        raise DomainError("k must be even")
    half = k // 2
    if half % 2 == 0:
        raise DomainError("k/2 must be odd")
    qs = _factor_small(half) if half > 1 else []
    if len(set(qs)) != len(qs):
        raise DomainError("k/2 must be square-free")
    out = Fraction(1)
    for q in qs:
        out *= 1 - Fraction(q - 1, q * q - q - 1)
    return out


def artin_style_product(k: int) -> Enclosure:
    return enc(artin_style_factor(k))


# epsilon_0 --------------------------------------------------------------------------


def epsilon0_from_threshold(threshold: Enclosure) -> tuple[int, Enclosure]:
    """Largest prime p with prod_{2<q<=p} q <= threshold, and 1/(p-2).

    Integer products are compared with the lower endpoint of the threshold, so
    an uncertain threshold can only make the returned bound weaker.
    """
    lo = threshold.lo
    if lo < 3:
        raise DomainError(f"no odd prime product fits under {threshold}")
    product = 1
    p_bar = None
    for p in first_primes(200)[1:]:
        if Decimal(product * p) > lo:
            break
        product *= p
        p_bar = p
    assert p_bar is not None
    return p_bar, enc(1) / (p_bar - 2)


def epsilon0(X2: Magnitude | Enclosure, delta: Decimal | str) -> Enclosure:
    """epsilon_0(X2, delta) = 1/(p - 2), p the largest prime with
    log^delta x2(X2) >= prod_{2<q<=p} q, where x2(N) = N / log^5 N."""
    log_x = X2.log() if isinstance(X2, Magnitude) else X2.log()
    log_x2 = log_x - 5 * log_x.log()
    threshold = log_x2 ** enc(Decimal(delta))
    return epsilon0_from_threshold(threshold)[1]


def euler_product_ratio(u: int, z: int) -> Enclosure:
    """prod_{u <= p < z} (1 - 1/(p-1))^{-1} = prod (p-1)/(p-2), for u > 2."""
    if u <= 2:
        raise DomainError("euler_product_ratio needs u > 2")
    ps = prime_table(z).below(z)
    ps = ps[np.searchsorted(ps, u, side="left") :]
    if len(ps) == 0:
        return enc(1)
    if len(ps) <= _EXACT_TERMS:
        num = _product([int(p) - 1 for p in ps])
        den = _product([int(p) - 2 for p in ps])
        return enc(Fraction(num, den))
    return _float_product_enclosure(ps - 1, ps - 2)
