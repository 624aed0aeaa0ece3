"""Branch arithmetic for the complex logarithm.

The library fixes the principal argument in [0, 2*pi) and indexes the
other sheets by an integer p, so lp(p, z) = log|z| + i*(arg z + 2*pi*p).
Negation, inversion and products then move between sheets by explicit
integer rules, demonstrated below with printed numbers.
"""

import cmath
import math

from twistlab import (
    diff_inv_branch,
    inv_branch,
    lp,
    neg_branch,
    principal_arg,
    q_offset_product,
    ratio_arg_decomposition,
)


def show(label, value):
    print(f"  {label:<38} {value}")


print("principal argument lives in [0, 2*pi)")
for z in (1.0 + 1.0j, -1.0, -1.0 - 1.0j, 1.0 - 0.001j):
    show(f"principal_arg({z})", f"{principal_arg(z):.6f}")
print()

print("indexed logarithms differ by 2*pi*i steps")
z = 1.5 * cmath.exp(0.8j)
for p in (-1, 0, 1, 2):
    show(f"lp({p:+d}, z)", f"{lp(p, z):.6f}")
show("lp(1,z) - lp(0,z)", f"{lp(1, z) - lp(0, z):.6f}")
print()

print("negation shifts the argument by half a turn, up or down")
for z in (1.0 + 0.5j, -1.0 + 0.5j, -1.0 - 0.5j):
    p, sigma = neg_branch(0, z)
    gap = lp(p, -z) - lp(0, z) - sigma * 1j * math.pi
    show(f"z = {z}: sigma = {sigma:+d}", f"residual {abs(gap):.2e}")
print()

print("inversion reflects the sheet index")
for z in (2.0, 2.0j, -2.0):
    q = inv_branch(1, z)
    gap = lp(q, 1.0 / z) + lp(1, z)
    show(f"inv_branch(1, {z}) = {q:+d}", f"residual {abs(gap):.2e}")
print()

print("the product rule for (z1 - z2)/(z1 * (-z2)) needs an integer offset q")
pairs = [
    (1.0j, 1.0),
    (2.0, 2.0 + 0.3j),
    (cmath.exp(2.5j) + 0.5 * cmath.exp(1.0j), cmath.exp(2.5j)),
    (cmath.exp(5.0j), cmath.exp(4.5j)),
]
for z1, z2 in pairs:
    show(f"q_offset_product({z1:.3f}, {z2:.3f})", q_offset_product(z1, z2))
print()

print("difference of inverses: 1/z2 - 1/z1 always lands on sheet -p2")
for (p1, p2), (z1, z2) in [((0, 0), (3.0, 1.0)), ((2, -1), (1.0j, -2.0))]:
    k, residual = diff_inv_branch(p1, p2, z1, z2)
    show(f"diff_inv_branch({p1}, {p2}, {z1}, {z2})",
         f"k = {k:+d}, residual {residual:.2e}")
print()

print("argument of a nearby ratio: plain arc (q=0) or wrapped arc (q=-1)")
z2 = 2.0 * cmath.exp(6.0j)
for z1 in (2.0, z2 + 0.3 * cmath.exp(5.9j)):
    try:
        q, defect = ratio_arg_decomposition(z1, 2.0 if z1 == 2.0 else z2)
        show(f"z1 = {z1:.3f}", f"q = {q:+d}, defect {defect:.2e}")
    except ValueError as e:
        show(f"z1 = {z1:.3f}", f"rejected ({e})")
