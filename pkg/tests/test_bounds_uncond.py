from __future__ import annotations

import random
from decimal import Decimal

import pytest

from almostprime import bounds_uncond as bu
from almostprime import primes
from almostprime.conditions import ConditionFailed
from almostprime.rigor import DomainError, Magnitude, enc

from conftest import uncond_params


def test_row_stitching():
    row = bu.default_row()
    assert (row.Y0, row.alpha1, row.alpha2, row.C) == (Decimal("7.8"), 7, 2, Decimal("431.57"))
    # 0.16 e^{7.9} = 430.3..., and the larger constant is rounded up at two decimals
    assert bu.stitch_pntap_rows(bu.PNTAPRow("7.8", "7", "1", "0.16"), bu.PNTAPRow("7.9", "7", "2", "1")).C == Decimal("431.57")
    with pytest.raises(DomainError):
        bu.PNTAPRow("7.8", "2", "3", "1")
    with pytest.raises(DomainError):
        bu.stitch_pntap_rows(bu.PNTAPRow("7.8", "7", "2", "1"), bu.PNTAPRow("7.9", "6", "2", "1"))


def test_epsilon_of_u_variants():
    assert bu.epsilon_of_u(450).hi < 1 / Decimal("1807.21138")
    assert bu.epsilon_of_u(31, "u30").lo > 0
    with pytest.raises(DomainError):
        bu.epsilon_of_u(400)
    with pytest.raises(DomainError):
        bu.epsilon_of_u(30, "u30")


@pytest.mark.parametrize("x", [int(enc("8.9").exp().hi) + 1, 10**4, 10**6, 10**8])
def test_mertens_bounds_bracket_direct_sums(x):
    direct = primes.prime_sum_reciprocal(x)
    assert bu.mertens_lower(x).hi <= direct.lo
    assert direct.hi <= bu.mertens_upper(x).lo


def test_mertens_upper_domain():
    with pytest.raises(DomainError):
        bu.mertens_upper(1000)


def test_product_bound_dominates_direct_product():
    rng = random.Random(3)
    z_floor = int(enc("8.9").exp().hi) + 1
    for _ in range(8):
        z = rng.randint(z_floor, 10**6)
        u = rng.randint(31, z - 1)
        assert primes.euler_product_ratio(u, z).hi <= bu.reciprocal_product_bound(u, z).lo


def test_xi_values():
    assert bu.xi(Magnitude.parse("1e12"), 40).hi <= 801
    # the value at e^8.9 with M = 18 comes out at 4688.71
    x = bu.xi(Magnitude.parse("e8.9"), 18)
    assert Decimal("4688.70") < x.lo and x.hi < Decimal("4688.71")
    with pytest.raises(DomainError):
        bu.xi(Magnitude.parse("100"), 40)


def test_beta0_upper_is_below_one():
    p = uncond_params()
    b = bu.beta0_upper(p.X2, p)
    assert 0 < b.lo and b.hi < 1


def test_conditions_pass_at_theorem_point():
    conds = bu.check_conditions(uncond_params())
    assert all(c.passed for c in conds), [str(c) for c in conds if not c.passed]
    assert any(c.name == "X2 >= 4e18 (log scale)" for c in conds)


def test_small_M_fails_the_sieve_level():
    conds = bu.check_conditions(uncond_params(M=4))
    failed = [c.name for c in conds if not c.passed]
    assert failed[0].startswith("N^(1/2-alpha)/log^(2 a1) N >= z^2")


def test_u_window_edges():
    assert not all(c.passed for c in bu.check_conditions(uncond_params(u="546")))
    assert not all(c.passed for c in bu.check_conditions(uncond_params(u="400.02")))


def test_tower(reference_tower):
    t = reference_tower
    assert t.xi.hi <= 801
    assert t.epsilon0 == enc(1) / 11
    assert Decimal("32502") < t.c4.hi < Decimal("32504")
    assert Decimal("32382") < t.c4_star.hi < Decimal("32384")
    assert t.c1.hi < 540 and t.c3.hi < 3 and t.a.hi < Decimal("0.023")
    assert t.m_bar.hi < Decimal("1.06e-4")
    names = [name for name, _ in t.items()]
    assert "xi" in names and "c4" in names


def test_coefficients_require_C(reference_tower):
    with pytest.raises(DomainError):
        bu.theorem41_coefficients(uncond_params(), reference_tower)


def test_coefficients_without_C(reference_tower):
    # C1 = C2 = 0 gives upper bounds for the true coefficients (they enter with minus signs)
    res = bu.theorem41_coefficients(uncond_params(C1_eps=enc(0), C2_eps=enc(0)), reference_tower)
    assert Decimal("34.42") < res.coeff_small_k1.lo < Decimal("34.43")
    assert Decimal("39.06") < res.coeff_large_k1.lo < Decimal("39.07")
    assert res.pieces["f(s)"].lo > Decimal("0.99999")


def test_coefficients_refuse_failed_conditions():
    with pytest.raises(ConditionFailed):
        bu.theorem41_coefficients(uncond_params(M=4, C1_eps=enc(0), C2_eps=enc(0)))
