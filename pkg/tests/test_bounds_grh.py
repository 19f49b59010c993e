from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction

import pytest

from almostprime import bounds_grh as bg
from almostprime import primes
from almostprime.rigor import DomainError, Magnitude, enc, log_integral

from conftest import grh_params

X4E18 = Magnitude.parse("4e18")


def test_constant_ceilings_at_goldbach_limit():
    assert bg.c_pi(X4E18).hi <= Decimal("0.640")
    assert bg.c_theta(X4E18).hi <= Decimal("0.83")
    assert bg.p_G(X4E18).hi <= Decimal("0.429")
    assert bg.c4G(X4E18).hi <= Decimal("0.429")


def test_constants_need_goldbach_range():
    with pytest.raises(DomainError):
        bg.c_pi(Magnitude.parse("1e18"))
    with pytest.raises(DomainError):
        bg.c_theta(enc(10) ** 12)


def test_constants_decrease_with_X():
    assert bg.c_pi(Magnitude.parse("ee5.087")).hi < bg.c_pi(X4E18).lo


def test_G_exact_antiderivative_matches_quadrature_identity():
    # int_x^oo (e^g log log t / t^2 + 3/t^2) dt = e^g (loglog x / x - li(1/x)) + 3/x
    x = enc(10**6)
    g_exact = bg.G_fn(x, exact_antiderivative=True)
    g_printed = bg.G_fn(x)
    assert g_printed.hi < g_exact.lo
    li = log_integral(1 / x)
    assert li.hi < 0


def test_divisor_enumeration():
    assert bg.odd_primorial_divisors(1) == [1, 3]
    assert len(bg.odd_primorial_divisors(5)) == 32


@pytest.mark.parametrize("L", [1, 2, 3, 4, 5])
def test_divisor_sums_against_closed_forms(L):
    brute = bg.divisor_pair_sums(L)
    closed = bg.divisor_pair_closed_forms(L)
    assert brute["count"] == closed["count"]
    assert brute["inv_e"].hi <= closed["inv_e"].hi
    assert brute["inv_sqrt_de"].hi <= closed["inv_sqrt_de"].lo or L == 1


def test_divisor_sums_exact_rationals():
    # sum over d | 15, e | d of 1/e = prod over q in {3, 5} of (2 + 1/q)
    ps = [3, 5]
    expected = math.prod(Fraction(2) + Fraction(1, q) for q in ps)
    s = bg.divisor_pair_sums(2)["inv_e"]
    assert Fraction(s.lo) <= expected <= Fraction(s.hi)
    assert expected < Fraction(7, 3) ** 2


def test_representation_bound_preconditions():
    with pytest.raises(DomainError):
        bg.hathi_lower_bound(bg.HathiParams(14, "e109", "10", "0.13"))
    with pytest.raises(DomainError):
        bg.HathiParams(14, "e109", "10^14.7", "0.6")
    with pytest.raises(DomainError):
        bg.hathi_lower_bound(bg.HathiParams(14, "e20", "10^5", "0.13"))


def test_representation_bound_bounds_as_printed():
    b15 = bg.hathi_lower_bound(bg.HathiParams(14, "e109", "10^14.7", "0.13"))
    b22 = bg.hathi_lower_bound(bg.HathiParams(21, "e158", "10^23.1", "0.13"))
    # with the log N factor on the fourth penalty group both bounds are negative
    assert b15.bound.hi < 0 and b22.bound.hi < 0
    assert b15.main.lo > Decimal("0.03")


def test_representation_bound_bounds_without_fourth_group_log():
    b15 = bg.hathi_lower_bound(bg.HathiParams(14, "e109", "10^14.7", "0.13", fourth_group_log_factor=False))
    b22 = bg.hathi_lower_bound(bg.HathiParams(21, "e158", "10^23.1", "0.13", fourth_group_log_factor=False))
    assert b15.bound.lo > Decimal("0.0313") and b22.bound.lo > Decimal("0.00448")


def test_grh_conditions_pass_at_theorem_point():
    conds = bg.grh_conditions(grh_params())
    assert all(c.passed for c in conds), [str(c) for c in conds if not c.passed]


def test_grh_u_window():
    assert not all(c.passed for c in bg.grh_conditions(grh_params(u="30.6116")))
    assert not all(c.passed for c in bg.grh_conditions(grh_params(u="30.6121")))


def test_grh_params_validation():
    with pytest.raises(DomainError):
        grh_params(A="2")


def test_theorem_coefficient_without_C():
    with pytest.raises(DomainError):
        bg.theorem510_coefficient(grh_params())
    res = bg.theorem510_coefficient(grh_params(C1_eps=enc(0)))
    assert Decimal("14.48") < res.coefficient.lo < Decimal("14.49")
    assert abs(res.pieces["f(s)"].mid - Decimal("0.97209")) < Decimal("1e-4")


def test_theorem_coefficient_is_affine_in_C1():
    a = bg.theorem510_coefficient(grh_params(C1_eps=enc(0))).coefficient.lo
    b = bg.theorem510_coefficient(grh_params(C1_eps=enc(100))).coefficient.lo
    c = bg.theorem510_coefficient(grh_params(C1_eps=enc(200))).coefficient.lo
    assert abs((a - b) - (b - c)) < Decimal("1e-20")
    assert b < a
