"""Search parameters for the GRH bound and report sensitivity.

Run: python demos/parameter_search.py

Uses C1 = 0 and drops the fourth-group log N factor so that candidates can
pass; the point is to show how the search and the report behave.
"""

from __future__ import annotations

from almostprime import bounds_grh as bg
from almostprime import search
from almostprime.rigor import enc

base = bg.GrhParams(
    X2="ee5.087", alpha="0.28365", A="2.01", M=18, u="30.6118",
    epsilon=enc(1) / enc("76.1639"), C1_eps=enc(0),
)
options = {"fourth_group_log_factor": False}

space = search.SearchSpace(base, {"M": (16, 17, 18, 19, 20)}, options)
result = search.optimize(space, budget=10)
for entry in result.trace:
    print(dict(entry.point), entry.K if entry.K is not None else entry.reason)
print(f"best K = {result.best_K} at M = {result.best_params.M}")

print("\nSensitivity")
for row in search.sensitivity_report(base, [("M = 12", {"M": 12}), ("A = 2.5", {"A": "2.5"})], **options):
    print(f"  {row.label:>8}: K = {row.K}, binding = {row.binding}")
