"""Stitch the GRH range covering for X2 = exp(exp(5.087)).

Run: python demos/grh_stitching.py

The covering uses representations coprime to the first L+1 primes on three
ranges.  The lower bound for the representation count is shown twice: as
stated, with a log N factor on the fourth penalty group, and without it.
"""

from __future__ import annotations

from almostprime import bounds_grh as bg
from almostprime import small_n, verify
from almostprime.rigor import Magnitude, enc

params = bg.GrhParams(
    X2="ee5.087", alpha="0.28365", A="2.01", M=18, u="30.6118",
    epsilon=enc(1) / enc("76.1639"), C1_eps=enc(0),
)

print("Representation lower bounds R_k(N)/N")
for k, start, B in ((14, "e109", "10^14.7"), (21, "e158", "10^23.1")):
    with_log = bg.hathi_lower_bound(bg.HathiParams(k, start, B, "0.13")).bound
    without = bg.hathi_lower_bound(bg.HathiParams(k, start, B, "0.13", fourth_group_log_factor=False)).bound
    print(f"  L+1 = {k + 1:2d}, N >= {start}: {with_log.lo:+.5f} as stated, {without.lo:+.5f} without log N")

for flag in (True, False):
    run = verify.verify_grh(params, fourth_group_log_factor=flag)
    print(f"\nfourth_group_log_factor = {flag}: {'verified' if run.passed else 'not verified'}")
    if run.binding():
        print(f"  binding: {run.binding()}")
    if run.assembly is not None:
        for row in small_n.coverage_table(run.assembly):
            print("  ", *row)
        print(f"  final K = {run.final_K}")

print("\nDropping the middle range leaves a gap:")
ranges = [r for r in verify.default_grh_ranges(Magnitude.parse("ee5.087")) if r.L_plus_1 != 15]
print(" ", verify.verify_grh(params, ranges, fourth_group_log_factor=False).binding())
