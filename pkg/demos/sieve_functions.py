"""The linear sieve functions f and F.

Run: python demos/sieve_functions.py

Values come from a rigorous march of the delay equations; a few points are
compared with independent closed-form quadratures.
"""

from __future__ import annotations

from decimal import Decimal

from almostprime import sieve_fns
from almostprime.rigor import enc, working_precision

print(f"{'s':>5}  {'f(s)':>22}  {'F(s)':>22}")
s = Decimal(2)
while s <= 7:
    f, F = sieve_fns.eval_f(s), sieve_fns.eval_F(s)
    print(f"{s:>5}  {f.mid:>22.15f}  {F.mid:>22.15f}")
    s += Decimal("0.5")

print(f"\nF(6) - 1 = {(sieve_fns.eval_F(6) - 1).mid:.6e}")
print(f"1 - f(6) = {(1 - sieve_fns.eval_f(6)).mid:.6e}")

print("\nMarch against closed form (30 digits, quadrature tolerance 1e-12)")
with working_precision(30):
    for s in ("3.5", "4.5", "5.5"):
        marched = sieve_fns.eval_F(s)
        closed = sieve_fns.closed_form_F(enc(s), Decimal("1e-12"))
        print(f"  F({s}): overlap {marched.overlaps(closed)}, closed-form width {closed.width:.1e}")
