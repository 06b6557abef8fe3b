"""
The Liouville function from a sieve table
=========================================

lambda(n) = (-1)**Omega(n).  One smallest-prime-factor sieve gives the whole
table, and big arguments fall back to factoring.
"""

import numpy as np

from chowlakit import liouville, liouville_table

table = liouville_table(10**6)
print("lambda(1..12):", table.signs[1:13].tolist())

# partial sums wander around zero without settling
for x in (10, 100, 10**4, 10**6):
    print(f"sum_(n<={x}) lambda(n) = {table.summatory(x)}")

# complete multiplicativity, checked on random pairs
rng = np.random.default_rng(0)
a = rng.integers(1, 1000, 5000)
b = rng.integers(1, 1000, 5000)
print("multiplicative on 5000 pairs:", bool(np.all(table[a * b] == table[a] * table[b])))

# past the table the scalar path factors the argument
n = 2**61 - 1  # a Mersenne prime
print(f"lambda(2^61 - 1) = {liouville(n)}, lambda((2^61 - 1)^2 * 3) = {liouville(n * n * 3)}")
