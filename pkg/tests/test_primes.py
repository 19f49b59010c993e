from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction

import pytest

from almostprime import primes
from almostprime.rigor import DomainError, Magnitude, enc


def _naive_primes(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, math.isqrt(p) + 1))]


def test_sieve_matches_trial_division():
    assert primes.sieve(5000).primes.tolist() == _naive_primes(5000)


@pytest.mark.parametrize("n, p", [(1, 2), (6, 13), (22, 79), (1000, 7919)])
def test_nth_prime(n, p):
    assert primes.nth_prime(n) == p


def test_sieve_budget_is_enforced():
    with pytest.raises(primes.ResourceError):
        primes.sieve(10**8, budget=10**6)


def test_theta_small_values():
    assert primes.theta(1) == enc(0)
    assert primes.theta(2) == enc(2).log()
    direct = sum((enc(p).log() for p in (2, 3, 5, 7, 11, 13)), enc(0))
    t13 = primes.theta(13)
    assert t13.overlaps(direct)
    assert abs(t13.mid - Decimal("10.3099")) < Decimal("1e-4")


def test_log_of_huge_integer_brackets():
    n = primes.primorial(60)
    e = primes.log_of_int(n)
    assert e.contains(primes.theta(primes.nth_prime(60)).mid) or e.overlaps(primes.theta(primes.nth_prime(60)))
    assert e.width < Decimal("1e-50")


def test_prime_sum_reciprocal_exact_cases():
    assert primes.prime_sum_reciprocal(3).contains(Decimal("0.5"))
    s7 = primes.prime_sum_reciprocal(7)
    exact = Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 5)
    assert Fraction(s7.lo) <= exact <= Fraction(s7.hi)


def test_tail_of_inverse_square_sum():
    full = primes.sum_inv_p_sq_enclosure()
    assert primes.tail_sum_inv_p_sq(2).overlaps(full)
    assert primes.tail_sum_inv_p_sq(10**6).hi <= Decimal("1e-6")
    assert Decimal("0.452247") <= full.hi and full.lo <= Decimal("0.452248")


def test_euler_product_ratio_single_factor_and_limit():
    assert primes.euler_product_ratio(3, 4) == enc(2)  # p = 3: 2/1
    assert primes.euler_product_ratio(4, 6).contains(Fraction(4, 3))  # p = 5


def test_twin_prime_partial_products():
    assert primes.twin_prime_partial(4).contains(Fraction(4, 3))
    twin = primes.twin_prime_constant()
    assert abs(primes.twin_prime_partial(10**7).mid - (1 / twin).mid) < Decimal("1e-6")
    assert ((1 / twin) / primes.twin_prime_partial(30)).hi <= Decimal("1.00754")


def test_inverse_square_tail_at_30():
    # 0.54 times the tail beyond 30 is 0.0039079 to five significant digits
    scaled = primes.tail_sum_inv_p_sq(30) * enc("0.54")
    assert scaled.contains(Decimal("0.00390788"))
    assert scaled.width < Decimal("1e-7")


def test_quoted_constants():
    twin = primes.twin_prime_constant()
    artin = primes.artin_constant()
    assert twin.overlaps(enc("0.66016", "0.66017"))
    assert artin.overlaps(enc("0.37395", "0.37396"))


def test_primorials():
    assert primes.primorial(1) == 2
    assert primes.primorial(6) == 30030
    assert primes.primorial(15) == math.prod(_naive_primes(47))


def test_artin_style_factor():
    assert primes.artin_style_factor(2) == 1
    assert primes.artin_style_factor(6) == Fraction(3, 5)
    k = primes.primorial(15)
    direct = Fraction(1)
    for q in _naive_primes(47)[1:]:
        direct *= 1 - Fraction(q - 1, q * q - q - 1)
    assert primes.artin_style_factor(k) == direct
    with pytest.raises(DomainError):
        primes.artin_style_factor(15)
    with pytest.raises(DomainError):
        primes.artin_style_factor(2 * 9)


def test_epsilon0_thresholds():
    assert primes.epsilon0_from_threshold(enc(15015)) == (13, enc(1) / 11)
    assert primes.epsilon0_from_threshold(enc(255254))[0] == 13
    assert primes.epsilon0_from_threshold(enc(255255))[0] == 17
    assert primes.epsilon0_from_threshold(enc(3)) == (3, enc(1))
    assert primes.epsilon0_from_threshold(enc(14))[0] == 3
    with pytest.raises(DomainError):
        primes.epsilon0_from_threshold(enc(2))


def test_epsilon0_at_unconditional_parameters():
    X2 = Magnitude.parse("ee7.816")
    L = X2.log()
    threshold = (L - 5 * L.log()) ** enc("1.3")
    assert 15015 < threshold.lo and threshold.hi < 255255
    assert primes.epsilon0(X2, "1.3") == enc(1) / 11
