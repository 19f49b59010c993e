from __future__ import annotations

import pytest

from almostprime import bounds_grh, bounds_uncond
from almostprime.rigor import enc


def uncond_params(**changes) -> bounds_uncond.UncondParams:
    """Theorem-level unconditional parameters; C1 and C2 default to unknown."""
    base = dict(
        X2="ee7.816",
        delta="1.3",
        alpha="0.25",
        M=40,
        u="450",
        row=bounds_uncond.default_row(),
        epsilon=enc(1) / enc("1807.2114"),
    )
    base.update(changes)
    return bounds_uncond.UncondParams(**base)


def grh_params(**changes) -> bounds_grh.GrhParams:
    base = dict(
        X2="ee5.087",
        alpha="0.28365",
        A="2.01",
        M=18,
        u="30.6118",
        epsilon=enc(1) / enc("76.1639"),
    )
    base.update(changes)
    return bounds_grh.GrhParams(**base)


@pytest.fixture(scope="session")
def reference_tower():
    return bounds_uncond.constant_tower(uncond_params())


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
