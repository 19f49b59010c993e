from __future__ import annotations

from decimal import Decimal

import pytest

from almostprime import sieve_fns
from almostprime.rigor import DomainError, Magnitude, PrecisionExhausted, e_gamma, enc, working_precision


def test_initial_segment_is_exact():
    assert sieve_fns.eval_F(2).overlaps(e_gamma())
    assert sieve_fns.eval_f(2) == enc(0)
    assert sieve_fns.eval_f("1.5") == enc(0)
    assert sieve_fns.eval_F(3).overlaps(2 * e_gamma() / 3)


def test_checkpoint_f_38943():
    f = sieve_fns.eval_f("3.8943")
    assert abs(f.mid - Decimal("0.97209")) < Decimal("1e-4")
    assert f.width < Decimal("1e-20")


def test_checkpoints_at_six():
    # march values: F(6) - 1 = 1.0566e-4 and 1 - f(6) = 1.0494e-4
    F6 = sieve_fns.eval_F(6) - 1
    f6 = 1 - sieve_fns.eval_f(6)
    assert abs(F6.mid - Decimal("1.05657e-4")) < Decimal("1e-9")
    assert abs(f6.mid - Decimal("1.04940e-4")) < Decimal("1e-9")


def test_values_near_one_beyond_six():
    F7, f7 = sieve_fns.eval_F(7), sieve_fns.eval_f(7)
    assert F7.lo > 1
    assert F7.hi < 1 + Decimal("1.06e-4")
    assert f7.hi < 1 and 1 - f7.lo < Decimal("1.06e-4")


@pytest.mark.parametrize("s", ["2.25", "3.5", "4.5", "5.75"])
def test_march_meets_closed_form_f(s):
    with working_precision(30):
        closed = sieve_fns.closed_form_f(enc(s), Decimal("1e-12"))
        assert sieve_fns.eval_f(s).overlaps(closed)


@pytest.mark.parametrize("s", ["2.75", "3.25", "4.5", "5.5", "6.75"])
def test_march_meets_closed_form_F(s):
    with working_precision(30):
        closed = sieve_fns.closed_form_F(enc(s), Decimal("1e-12"))
        assert sieve_fns.eval_F(s).overlaps(closed)
        assert closed.width < Decimal("1e-6")


def test_closed_forms_refuse_straddling_intervals():
    with pytest.raises(DomainError):
        sieve_fns.closed_form_f(enc("3.9", "4.1"))
    with pytest.raises(DomainError):
        sieve_fns.closed_form_F(enc("4.9", "5.1"))


def test_table_grid_and_bounds():
    table = sieve_fns.march_table("4", "0.01")
    grid = table.grid
    assert grid[0][0] == 1 and grid[-1][0] == 4
    at_three = {s: (F, f) for s, f, F in grid}[Decimal(3)]
    assert at_three[0].overlaps(2 * e_gamma() / 3)
    assert at_three[1].overlaps(2 * e_gamma() * enc(2).log() / 3)
    with pytest.raises(DomainError):
        sieve_fns.march_table("11")
    with pytest.raises(DomainError):
        sieve_fns.march_table("4", "0.03")


def test_interval_arguments_give_hulls():
    F = sieve_fns.eval_F(enc("3", "4"))
    assert F.contains(sieve_fns.eval_F("3.5"))
    f = sieve_fns.eval_f(enc("2.5", "3"))
    assert f.lo <= sieve_fns.eval_f("2.5").lo and f.hi >= sieve_fns.eval_f("3").hi


def test_h_pieces():
    assert sieve_fns.h("1.5") == enc(-2).exp()
    assert sieve_fns.h("2.5").overlaps(enc("-2.5").exp())
    assert sieve_fns.h(4).overlaps(3 * enc(-4).exp() / 4)
    with pytest.raises(DomainError):
        sieve_fns.h("0.5")


def test_c_alpha():
    X2 = Magnitude.parse("ee7.816")
    with pytest.raises(DomainError):
        sieve_fns.c_alpha(X2, 40, "0.5", 7)
    assert sieve_fns.c_alpha(X2, 40, "0.25", 0) == enc(10)
    L = X2.log()
    direct = 40 * (enc("0.25") - 14 * L.log() / L)
    assert sieve_fns.c_alpha(X2, 40, "0.25", 7).overlaps(direct)


def test_m_bar():
    X2 = Magnitude.parse("ee7.816")
    c = sieve_fns.c_alpha(X2, 40, "0.25", 7)
    assert c.lo > 6
    mb = sieve_fns.m_bar("0.25", X2, 40, 7)
    assert mb.hi < Decimal("1.06e-4")
    # at c = 2: max(1 - 0, e^gamma - 1) = 1 since e^gamma - 1 = 0.78...
    assert (1 - sieve_fns.eval_f(2)).max(sieve_fns.eval_F(2) - 1) == enc(1)
