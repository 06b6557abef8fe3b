"""
Upper-bound sieve weights and the anti-sieve split
==================================================

Rosser's rule keeps d = p1*...*pr when p1*...*p_(m-1)*p_m^3 < y for odd m.
sigma_d = -lambda_d off d = 1, so 1 - sum_{d|n} sigma_d is nonnegative.
"""

from chowlakit import ConvexRegion, LatticeCoset, is_prime, liouville
from chowlakit.sieve import defect_sum, rosser_upper, sigma_from_lambda, split_triple_sum


def primerange(lo, hi):
    return [p for p in range(lo, hi) if is_prime(p)]


W = rosser_upper(primerange(2, 100), 100)
print(len(W.weights), "weights, largest d:", max(W.weights))
print("min of sum_{d|n} lambda_d over n <= 1e5:", W.divisor_sums(1, 10**5 + 1).min())

S = sigma_from_lambda(rosser_upper(primerange(5, 200), 200))
print("defect over [1, 1e5):", defect_sum(S, 0, 1, 1, 10**5))

# the split of sum lambda(x) lambda(y) lambda(x+y) over [1,60]^2
box = ConvexRegion.box(1, 1, 60, 60)
out = split_triple_sum(S, liouville, lambda x, y: liouville(y) * liouville(x + y), box, LatticeCoset.whole())
print(f"direct {out.direct}, main {out.main}, defect bound {out.defect_bound}")
print("closing identity exact:", out.main == out.divisor_side, " bracketed:", out.bracketed())
