from __future__ import annotations

from decimal import Decimal

import pytest

from almostprime import verify
from almostprime.rigor import DomainError, Magnitude, enc

from conftest import grh_params, uncond_params

# C1 = C2 = 0 exercise the pipeline only; real runs take them from an external table.
C_FREE = enc(0)


def test_uncond_run_records_everything():
    run = verify.verify_uncond(uncond_params(C1_eps=C_FREE, C2_eps=C_FREE))
    assert run.passed and run.final_K == 368
    names = [b.name for b in run.bounds]
    assert "xi" in names and "coefficient, k1 < K0(x2)" in names
    assert run.binding() is None


def test_uncond_run_requires_C():
    with pytest.raises(DomainError):
        verify.verify_uncond(uncond_params())


def test_uncond_failed_condition_is_recorded_not_raised():
    run = verify.verify_uncond(uncond_params(M=4, C1_eps=C_FREE, C2_eps=C_FREE))
    assert not run.passed
    assert run.binding().startswith("N^(1/2-alpha)/log^(2 a1) N >= z^2")
    assert run.final_K is None


def test_grh_run_as_printed_fails_on_representation_bound():
    run = verify.verify_grh(grh_params(C1_eps=C_FREE))
    assert not run.passed
    assert run.binding() == "R_k(N)/N lower bound, range [e109, e158) with L+1 = 15 not positive"


def test_grh_run_without_fourth_group_log():
    run = verify.verify_grh(grh_params(C1_eps=C_FREE), fourth_group_log_factor=False)
    assert run.passed and run.final_K == 32
    assert [r.K for r in run.assembly.ranges] == [1, 26, 32, 32, 17]


def test_grh_run_with_small_B():
    ranges = list(verify.default_grh_ranges(Magnitude.parse("ee5.087")))
    ranges[1] = verify.RangeSpec(ranges[1].start, ranges[1].end, 15, Magnitude.parse("10"), Decimal("0.13"))
    run = verify.verify_grh(grh_params(C1_eps=C_FREE), ranges, fourth_group_log_factor=False)
    assert not run.passed
    assert "B >= max(45, 8 sqrt(k/2)) fails" in run.binding()


def test_grh_run_with_missing_range():
    ranges = list(verify.default_grh_ranges(Magnitude.parse("ee5.087")))
    del ranges[1]
    run = verify.verify_grh(grh_params(C1_eps=C_FREE), ranges, fourth_group_log_factor=False)
    assert not run.passed
    assert run.failure == "gap between e109 and e158"


def test_range_needs_bound():
    six = verify.default_grh_ranges(Magnitude.parse("ee5.087"))[0]
    assert not six.needs_bound()
    with pytest.raises(DomainError):
        verify.verify_grh(grh_params(C1_eps=C_FREE), [verify.RangeSpec(Magnitude.parse("4e18"),
                                                                          Magnitude.parse("ee5.087"), 15)])
