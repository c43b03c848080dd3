#!/usr/bin/env python3
"""Tour of the exact closed form.

For a rational base g outside {-1, 0, 1} and a modulus d, the set of primes
p with d | ord_p(g) has a rational natural density.  This script decomposes
a few bases, prints the full factor breakdown of each density, and checks
the negative-base transfer identity by hand.
"""

from fractions import Fraction

from orddiv import decompose, density, density_by_transfer

print("=" * 72)
print("Base decompositions: g = sign * g0^h, g0 > 0 not an exact power")
print("=" * 72)
for g in (2, -9, Fraction(8, 27), 12, -50):
    dec = decompose(g)
    print(
        f"g = {str(dec.base):>6}:  sign {dec.sign:+d}, g0 = {dec.g0}, "
        f"h = {dec.h}, disc(Q(sqrt(g0))) = {dec.disc}"
    )

print()
print("=" * 72)
print("Density reports: delta = epsilon1 * S(d, h)")
print("=" * 72)
for g, d in ((2, 2), (2, 8), (-9, 6), (Fraction(8, 27), 4), (7, 1)):
    r = density(g, d)
    gamma = f", gamma = {r.gamma}" if r.gamma is not None else ""
    print(
        f"g = {str(r.decomposition.base):>6}, d = {d:2d}  [{r.case_label}{gamma}]  "
        f"epsilon1 = {r.epsilon1!s:>6}, S = {r.s_factor!s:>6}  ->  "
        f"delta = {r.delta} ~ {float(r.delta):.8f}"
    )

print()
print("=" * 72)
print("Negative bases from positive ones (transfer identity)")
print("=" * 72)
# For d = 2 (mod 4):  delta(-g, d) = delta(g, d/2) + delta(g, 2d) - delta(g, d)
g, d = 2, 6
parts = [density(g, d // 2).delta, density(g, 2 * d).delta, density(g, d).delta]
combined = parts[0] + parts[1] - parts[2]
print(f"delta({g}, {d // 2}) + delta({g}, {2 * d}) - delta({g}, {d}) = "
      f"{parts[0]} + {parts[1]} - {parts[2]} = {combined}")
print(f"direct evaluation of delta({-g}, {d})   = {density(-g, d).delta}")
print(f"density_by_transfer({-g}, {d})          = {density_by_transfer(-g, d)}")
assert combined == density(-g, d).delta == density_by_transfer(-g, d)
print("transfer identity verified exactly.")
