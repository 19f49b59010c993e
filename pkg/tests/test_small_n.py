from __future__ import annotations

import random

import pytest

from almostprime import primes, small_n
from almostprime.rigor import DomainError, Magnitude, PrecisionExhausted, enc, working_precision


def test_brute_force_small_cases():
    # L + 1 = 6: the next primes are 17, 19, 23, ...; 17 * 19 = 323
    assert small_n.brute_force_k(300, 6) == 1
    assert small_n.brute_force_k(323, 6) == 1
    assert small_n.brute_force_k(324, 6) == 2


def test_exact_and_log_paths_agree():
    rng = random.Random(5)
    for _ in range(40):
        X2 = rng.randint(10**3, 10**30)
        lp1 = rng.randint(1, 10)
        assert small_n.max_k_for_range(X2, lp1) == small_n.brute_force_k(X2, lp1)


def test_goldbach_limit_against_theta_sum():
    K = small_n.max_k_for_range("4e18", 6)
    assert K == 12
    ps = primes.first_primes(6 + K + 1)
    inside = primes.theta_range(6, 6 + K)
    beyond = primes.theta_range(6, 6 + K + 1)
    log_x = enc(4 * 10**18).log()
    assert inside.hi < log_x.lo and beyond.lo > log_x.hi
    assert ps[-1] == primes.nth_prime(6 + K + 1)


def test_symbolic_magnitudes():
    assert small_n.max_k_for_range("ee7.816", 6) == 368
    assert small_n.max_k_for_range("e109", 6) == 26
    assert small_n.max_k_for_range("e158", 15) == 32
    assert small_n.max_k_for_range("ee5.087", 22) == 32


def test_undecided_comparison_raises():
    # log X2 within 1e-15 of log 17 = theta(p_7) - theta(p_6), far below 12-digit resolution
    L = enc(17).log()
    X2 = Magnitude("exp", L.mid.quantize(enc("1e-15").lo))
    with working_precision(12):
        with pytest.raises(PrecisionExhausted):
            small_n.max_k_for_range(X2, 6)


def test_no_factor_fits():
    with pytest.raises(DomainError):
        small_n.max_k_for_range(10, 6)


def test_assembly_unconditional():
    a = small_n.assemble_final_K(39, small_n.unconditional_ranges("ee7.816"), "ee7.816")
    assert a.K == 368
    assert [r.mechanism for r in a.ranges] == ["goldbach_verified", "primorial_coprime", "sieve_theorem"]


def test_assembly_grh():
    a = small_n.assemble_final_K(17, small_n.grh_ranges("ee5.087"), "ee5.087")
    assert a.K == 32
    assert [r.K for r in a.ranges] == [1, 26, 32, 32, 17]


def test_assembly_detects_gaps():
    ranges = [small_n.goldbach_range(), small_n.primorial_range("e158", "ee5.087", 22)]
    with pytest.raises(small_n.CoverageError):
        small_n.assemble_final_K(17, ranges, "ee5.087")
    with pytest.raises(small_n.CoverageError):
        small_n.assemble_final_K(17, [small_n.primorial_range("4e18", "e109", 6)], "e109")


def test_range_validation():
    with pytest.raises(DomainError):
        small_n.RangeK("e10", "e5", 6, 3, "primorial_coprime")
    with pytest.raises(DomainError):
        small_n.RangeK(2, "4e18", 0, 2, "goldbach_verified")
    with pytest.raises(DomainError):
        small_n.RangeK(2, "4e18", 0, 1, "guesswork")


def test_coverage_table_rows():
    a = small_n.assemble_final_K(39, small_n.unconditional_ranges("ee7.816"), "ee7.816")
    rows = small_n.coverage_table(a)
    assert rows[0] == ("2", "4E+18", "goldbach_verified", 1)
    assert rows[-1][1] == "inf"
