from __future__ import annotations

import itertools
from decimal import Decimal

import pytest

from almostprime import search
from almostprime.rigor import DomainError, enc

from conftest import grh_params, uncond_params

C_FREE = enc(0)  # pipeline exercise only
GRH_OPTS = {"fourth_group_log_factor": False}


def _grh_space(grids):
    return search.SearchSpace(grh_params(C1_eps=C_FREE), grids, GRH_OPTS)


def _exhaustive(space):
    best = None
    for values in itertools.product(*(space.grids[a] for a in space.axes)):
        point = dict(zip(space.axes, values))
        _, entry = search.evaluate(space, point)
        if entry.K is not None:
            rank = search._rank(entry, point)
            best = rank if best is None or rank < best else best
    return None if best is None else best[0]


def test_space_validation():
    with pytest.raises(DomainError):
        _grh_space({"M": (4, 18)})
    with pytest.raises(DomainError):
        _grh_space({"delta": ("1.3",)})
    with pytest.raises(DomainError):
        search.SearchSpace(uncond_params(C1_eps=C_FREE, C2_eps=C_FREE), {"delta": ("2.5",)})


def test_grh_search_includes_theorem_point():
    space = _grh_space({"M": (16, 17, 18, 19), "loglog_X2": ("5.087", "5.1")})
    res = search.optimize(space, budget=20)
    assert res.feasible and res.best_K <= 33
    assert res.best_K == _exhaustive(space)


def test_infeasible_space_reports_nearest():
    space = _grh_space({"M": (5,), "loglog_X2": ("5.087", "5.1", "5.2")})
    res = search.optimize(space, budget=10)
    assert not res.feasible and _exhaustive(space) is None
    assert res.nearest is not None and res.nearest.reason


def test_search_is_deterministic():
    space = _grh_space({"M": (17, 18), "alpha": ("0.28365", "0.28")})
    a, b = search.optimize(space, 10), search.optimize(space, 10)
    assert a.trace == b.trace and a.best_K == b.best_K


def test_enlarging_space_never_hurts():
    small = search.optimize(_grh_space({"M": (18,)}), 10)
    large = search.optimize(_grh_space({"M": (18, 19, 20)}), 10)
    assert large.best_K <= small.best_K


def test_budget_limits_evaluations():
    res = search.optimize(_grh_space({"M": (16, 17, 18, 19, 20)}), budget=2)
    assert len(res.trace) == 2
    with pytest.raises(DomainError):
        search.optimize(_grh_space({"M": (18,)}), budget=0)


def test_uncond_search_includes_theorem_point():
    space = search.SearchSpace(uncond_params(C1_eps=C_FREE, C2_eps=C_FREE), {"M": (40, 41)})
    res = search.optimize(space, budget=4)
    assert res.best_K is not None and res.best_K <= 369


def test_sensitivity_report():
    base = uncond_params(C1_eps=C_FREE, C2_eps=C_FREE)
    rows = search.sensitivity_report(base, [("same", {}), ("M = 200", {"M": 200}),
                                            ("small X2", {"X2": "ee7.7"})])
    assert rows[0].K == rows[1].K == 368
    assert rows[2].xi_over_L2 > rows[0].xi_over_L2 * 100
    assert rows[3].binding == "loglog x2(X2) >= Y0"
