"""Property checks across all modules, runnable at a chosen scale.

Each check returns a list of :class:`Failure`; an empty list means the
property held on everything examined.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from . import arith, lattice, quadfield, sieve
from .arith import LiouvilleTable
from .experiments import FormSpec, Tables, run_chowla
from .factor import is_prime


@dataclass(frozen=True)
class Failure:
    module: str
    prop: str
    counterexample: str

    def __str__(self):
        return f"[{self.module}] {self.prop}: {self.counterexample}"


def check_multiplicativity(table: LiouvilleTable, pairs: int = 10_000, seed: int = 0):
    prop = "complete multiplicativity"
    # lambda(n) = -lambda(n / spf(n)) for every n covers each entry once.
    n = np.arange(2, table.limit + 1)
    bad = np.nonzero(table.signs[2:] != -table.signs[n // table.spf[2:].astype(np.int64)])[0]
    if bad.size:
        m = int(n[bad[0]])
        p = int(table.spf[m])
        return [Failure("core-arith", prop, f"lambda({m}) != lambda({p}) * lambda({m // p})")]
    rng = random.Random(seed)
    for _ in range(pairs):
        a = rng.randint(1, math.isqrt(table.limit))
        b = rng.randint(1, table.limit // a)
        if table[a * b] != table[a] * table[b]:
            return [Failure("core-arith", prop, f"lambda({a}*{b}) != lambda({a})*lambda({b})")]
    return []


def check_table_direct(table: LiouvilleTable, upto: int):
    for n in range(0, min(upto, table.limit) + 1):
        if table[n] != arith.liouville(n):
            return [Failure("core-arith", "table/direct agreement", f"n = {n}")]
    return []


def check_sq(bound: int):
    for n in itertools.chain(range(-bound, 0), range(1, bound + 1)):
        s, d = arith.sq_and_d(n)
        best = max(k for k in range(1, math.isqrt(abs(n)) + 1) if n % (k * k) == 0)
        if s != best or d != (s // 2 if n % 4 == 0 else s):
            return [Failure("core-arith", "sq/d_n brute force", f"n = {n}")]
    return []


def check_symbol_multiplicativity(trials: int, seed: int = 0):
    rng = random.Random(seed)
    for _ in range(trials):
        a1, a2 = rng.randint(-500, 500), rng.randint(-500, 500)
        b = rng.choice([-1, 1]) * rng.randint(1, 2000)
        if arith.symbol_ab(a1 * a2, b) != arith.symbol_ab(a1, b) * arith.symbol_ab(a2, b):
            return [Failure("core-arith", "(a|b) multiplicative in a", f"({a1}, {a2}, {b})")]
    return []


def _random_coset(rng, max_index):
    while True:
        a, c = rng.randint(1, max_index), rng.randint(1, max_index)
        if a * c <= max_index:
            return lattice.LatticeCoset(a, rng.randrange(a), c, rng.randrange(a), rng.randrange(c))


def check_intersections(trials: int, max_index: int = 30, seed: int = 0):
    rng = random.Random(seed)
    fails = []
    for _ in range(trials):
        l1, l2 = _random_coset(rng, max_index), _random_coset(rng, max_index)
        got = lattice.intersect(l1, l2)
        m = math.lcm(l1.index, l2.index)
        r = np.arange(m)
        X, Y = np.meshgrid(r, r)
        brute = l1.contains_array(X, Y) & l2.contains_array(X, Y)
        mine = np.zeros_like(brute) if got is None else got.contains_array(X, Y)
        if not np.array_equal(brute, mine):
            fails.append(Failure("lattice", "intersection = enumeration", f"{l1} ∩ {l2}"))
        elif got is not None:
            i1, i2, i = l1.index, l2.index, got.index
            if i % math.lcm(i1, i2) or (i1 * i2) % i:
                fails.append(Failure("lattice", "index divisibility", f"{l1} ∩ {l2} -> {got}"))
        if fails:
            return fails
    return []


def check_counts(trials: int, N: int = 60, seed: int = 0):
    rng = random.Random(seed)
    for _ in range(trials):
        pts = [(rng.randint(-N, N), rng.randint(-N, N)) for _ in range(rng.randint(1, 7))]
        S = lattice.ConvexRegion.hull(pts)
        L = _random_coset(rng, 20)
        brute = sum(
            1
            for x in range(-N, N + 1)
            for y in range(-N, N + 1)
            if (x, y) in L and (x, y) in S
        )
        if lattice.count_points(S, L) != brute:
            return [Failure("lattice", "closed-boundary count = enumeration", f"{S}, {L}")]
    return []


def check_restriction_law(bound: int, fields=(-1, -5, 2, 5, -23)):
    for d in fields:
        K = quadfield.QuadField(d)
        for n in range(1, bound + 1):
            expect = 0 if arith.liouville(n) == 1 else 2
            if quadfield.lambda_ext(quadfield.Ideal.rational(K, n)) != expect:
                return [Failure("quadfield", "restriction law", f"d = {d}, n = {n}")]
    return []


def check_form_identity(forms: int, bound: int = 20, seed: int = 0):
    rng = random.Random(seed)
    done = 0
    while done < forms:
        a, b, c = (rng.randint(-20, 20) for _ in range(3))
        try:
            fn = quadfield.form_to_norm(a, b, c)
        except ValueError:
            continue
        done += 1
        if not fn.check_identity(a, b, c, bound):
            return [Failure("quadfield", "a*Q = N(x a1 + y a2)", f"({a}, {b}, {c})")]
    return []


def check_sieve_positivity(limit: int):
    W = sieve.rosser_upper([p for p in range(2, 100) if is_prime(p)], 100)
    sums = W.divisor_sums(1, limit + 1)
    if sums.min() < 0:
        n = int(np.argmin(sums)) + 1
        return [Failure("sieve-weights", "upper-sieve positivity", f"n = {n}")]
    return []


def check_split_identity(side: int = 30):
    W = sieve.sigma_from_lambda(sieve.rosser_upper([2, 3, 5, 7], 10))
    S = lattice.ConvexRegion.box(1, 1, side, side)
    for f in (lambda x, y: 1, lambda x, y: arith.liouville(y)):
        r = sieve.split_triple_sum(W, arith.liouville, f, S, lattice.LatticeCoset.whole())
        if r.main != r.divisor_side or not r.bracketed():
            return [Failure("sieve-weights", "split identity", f"{r}")]
    return []


def check_serial_parallel(tables: Tables, N: int = 60):
    form = FormSpec.triple_linear([[1, 0], [0, 1], [1, 1]])
    S = lattice.ConvexRegion.box(1, 1, N, N)
    L = lattice.LatticeCoset.whole()
    a = run_chowla(form, S, L, N, tables, threads=1)
    b = run_chowla(form, S, L, N, tables, threads=4)
    if (a.raw, a.count) != (b.raw, b.count):
        return [Failure("experiments", "serial/parallel equivalence", f"{a.raw} vs {b.raw}")]
    return []


def run_all(limit: int = 100_000, table: LiouvilleTable | None = None, seed: int = 0):
    """Run every property at a scale tied to ``limit``; returns all failures."""
    table = table if table is not None else arith.liouville_table(limit)
    small = max(10, min(limit, 10_000) // 10)
    checks = [
        lambda: check_multiplicativity(table, seed=seed),
        lambda: check_table_direct(table, min(limit, 20_000)),
        lambda: check_sq(min(small, 1000)),
        lambda: check_symbol_multiplicativity(1000, seed),
        lambda: check_intersections(200, seed=seed),
        lambda: check_counts(10, seed=seed),
        lambda: check_restriction_law(min(small, 300)),
        lambda: check_form_identity(10, seed=seed),
        lambda: check_sieve_positivity(limit),
        lambda: check_split_identity(),
        lambda: check_serial_parallel(Tables(table), N=min(60, limit // 3)),
    ]
    failures = []
    for check in checks:
        failures += check()
    return failures
