"""
Lattice cosets and convex regions
=================================

Cosets of finite-index sublattices of Z^2 are kept in Hermite normal form.
Intersections come from the Chinese remainder theorem, and counts inside a
convex polygon are taken row by row.
"""

from fractions import Fraction

from chowlakit import ConvexRegion, LatticeCoset, count_points, intersect

odd_x = LatticeCoset.congruence(mx=2, rx=1)
y_mod3 = LatticeCoset.congruence(my=3, ry=1)
both = intersect(odd_x, y_mod3)
print("x odd and y = 1 (mod 3):", both.basis, "offset", both.offset, "index", both.index)

# incompatible congruences meet in nothing
print("x = 0 (mod 2) and x = 1 (mod 4):", intersect(LatticeCoset.congruence(2, 0), LatticeCoset.congruence(4, 1)))

# a triangle with rational corners; the count sits close to area / index
S = ConvexRegion([(0, 0), (Fraction(301, 2), 0), (Fraction(40, 3), 97)])
for L in (LatticeCoset.whole(), both, LatticeCoset.from_generators([(3, 1), (1, 4)], (1, 0))):
    n = count_points(S, L)
    expected = S.area() / L.index
    print(f"index {L.index:2d}: {n} points, area/index = {float(expected):.1f}")
