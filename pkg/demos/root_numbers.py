"""
Root numbers and progressions
=============================

The root number of y^2 = x(x+a)(x+b), averaged over coprime (a, b), and
Liouville sums along arithmetic progressions.
"""

from chowlakit import ConvexRegion, LatticeCoset, Tables, liouville_table, root_number
from chowlakit.experiments import run_bv, run_progression, run_root_number

print("W(E_{2,3}) =", root_number(2, 3), " W(E_{1,2}) =", root_number(1, 2))

tables = Tables(liouville_table(10**5))
for N in (64, 128, 256):
    row = run_root_number(ConvexRegion.box(1, 1, N, N), LatticeCoset.whole(), N, tables)
    print(f"N={N:3d}: sum {row.raw:5d} over {row.count} coprime pairs")

t = tables.lam
for m in (3, 4):
    print(f"n <= 1e5 by class mod {m}:", [run_progression(t, 10**5, m, a) for a in range(m)])

# the cutoff sqrt(N)/log(N)^6 is below 1 here, so pass the moduli range
print("sum over m <= 20 of the max progression sum:", run_bv(t, 10**4, 0, m_max=20))
