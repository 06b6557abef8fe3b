"""
Chowla averages over boxes
==========================

Averages of lambda(f(x, y)) over [1, N]^2 for x*y*(x+y) and for
(x^2+y^2)(x+2y), set against log log N / log N.
"""

from chowlakit import ConvexRegion, FormSpec, LatticeCoset, Tables, liouville_table
from chowlakit.experiments import decay_report, run_chowla

tables = Tables(liouville_table(2 * 512**2 + 2 * 512))
whole = LatticeCoset.whole()

for form, grid in (
    (FormSpec.triple_linear([(1, 0), (0, 1), (1, 1)]), (128, 256, 512)),
    (FormSpec.quad_times_linear(1, 0, 1, 1, 2), (128, 256, 512)),
):
    rows = [run_chowla(form, ConvexRegion.box(1, 1, N, N), whole, N, tables) for N in grid]
    print(form.describe())
    for line, row in zip(decay_report(rows).lines, rows):
        print(f"  N={line.N:4d} raw={row.raw:6d} avg={line.avg:+.2e} ratio={line.ratio:.5f}")

# a coset and a triangle instead of the box
S = ConvexRegion([(-300, -300), (300, -300), (0, 300)])
row = run_chowla(FormSpec.triple_linear([(1, 0), (0, 1), (1, -1)]), S, LatticeCoset.congruence(3, 1, 2, 0), 300, tables)
print(f"x*y*(x-y), triangle, x=1 (3), y even: raw {row.raw} over {row.count} points")
