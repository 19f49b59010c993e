"""Walk through the unconditional bound at X2 = exp(exp(7.816)).

Run: python demos/unconditional_walkthrough.py

C1(eps) and C2(eps) are external inputs that are not bundled.  They enter
every coefficient with a negative sign, so the values printed here with
C1 = C2 = 0 are upper bounds on the true coefficients.
"""

from __future__ import annotations

from almostprime import bounds_uncond as bu
from almostprime import small_n
from almostprime.rigor import enc

params = bu.UncondParams(
    X2="ee7.816", delta="1.3", alpha="0.25", M=40, u="450",
    row=bu.default_row(), epsilon=enc(1) / enc("1807.2114"),
    C1_eps=enc(0), C2_eps=enc(0),
)

print("Hypotheses")
conditions = bu.check_conditions(params)
for c in conditions:
    print(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}")

print("\nConstant tower (stored as [0, upper bound])")
tower = bu.constant_tower(params)
for name, value in tower.items():
    print(f"  {name:>18} <= {value.hi:.6g}")

res = bu.theorem41_coefficients(params, tower, conditions)
print("\nCoefficients of U_N N / log^2 N with C1 = C2 = 0")
print(f"  k1 <  K0(x2): >= {res.coeff_small_k1.lo:.4f}")
print(f"  k1 >= K0(x2): >= {res.coeff_large_k1.lo:.4f}")

print("\nSmall N: every even N < X2 is p + q with q having at most K prime factors")
assembly = small_n.assemble_final_K(params.M - 1, small_n.unconditional_ranges(params.X2), params.X2)
for row in small_n.coverage_table(assembly):
    print("  ", *row)
print(f"final K = {assembly.K}")
