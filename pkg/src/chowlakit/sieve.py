"""Upper-bound sieve weights and the anti-sieve transform built from them.

The weights follow Rosser's upper-bound rule: lambda+_d = mu(d) for a
squarefree d = p1*p2*...*pr (p1 > p2 > ... > pr, all in the sieving set)
such that p1*...*p_{m-1}*p_m**3 < y for every odd m <= r, and 0 otherwise.
The sigma weights are sigma_1 = 0 and sigma_d = -lambda+_d for d != 1, so
that 1 - sum_{d|n} sigma_d = sum_{d|n} lambda+_d >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .lattice import ConvexRegion, LatticeCoset, row_iterator
from .quadfield import Ideal, PrimeIdeal, QuadField, QuadInt

ROSSER_EXPONENT = 3


def _rosser_support(keys: list[int], y: int) -> list[tuple[int, ...]]:
    """Index tuples (i1 > i2 > ... ) of keys passing the Rosser upper condition.

    ``keys`` must be sorted increasingly; the tuple lists positions from the
    largest key down.
    """
    out: list[tuple[int, ...]] = [()]

    def extend(chosen: tuple[int, ...], prod: int):
        r = len(chosen)
        top = chosen[-1] if chosen else len(keys)
        for i in range(top - 1, -1, -1):
            k = keys[i]
            if r % 2 == 0 and prod * k**ROSSER_EXPONENT >= y:
                # position r+1 is odd; smaller keys may still pass
                continue
            if prod * k >= y:
                continue
            nxt = chosen + (i,)
            out.append(nxt)
            extend(nxt, prod * k)

    extend((), 1)
    return out


@dataclass(frozen=True)
class SieveWeights:
    """Finitely supported d -> lambda+_d with rational values."""

    primes: tuple[int, ...]
    cut: int
    weights: dict[int, Fraction]
    lower: int = 0

    def __post_init__(self):
        if self.weights.get(1) != 1:
            raise ValueError("lambda+_1 must be 1")
        pset = set(self.primes)
        for d, w in self.weights.items():
            if abs(w) > 1:
                raise ValueError(f"|lambda+_{d}| = {abs(w)} > 1")
            if w and d >= self.cut:
                raise ValueError(f"lambda+_{d} nonzero beyond the cut {self.cut}")
            if w and any(p not in pset for p in _prime_divisors(d)):
                raise ValueError(f"lambda+_{d} has a prime factor outside the sieving set")
        if not self.lower:
            object.__setattr__(self, "lower", min(self.primes) if self.primes else self.cut)

    @classmethod
    def from_mapping(cls, weights, primes=None, cut=None, lower=0) -> "SieveWeights":
        w = {int(d): Fraction(v) for d, v in weights.items()}
        if primes is None:
            primes = sorted({p for d in w for p in _prime_divisors(d)})
        if cut is None:
            cut = max(w) + 1
        return cls(tuple(primes), cut, w, lower)

    def divisor_sums(self, lo: int, hi: int) -> np.ndarray:
        """sum_{d|n} lambda+_d for lo <= n < hi (n >= 1), as exact int64."""
        if any(w.denominator != 1 for w in self.weights.values()):
            raise TypeError("divisor_sums needs integral weights")
        out = np.zeros(hi - lo, dtype=np.int64)
        for d, w in self.weights.items():
            if w:
                start = (-lo) % d
                out[start::d] += int(w)
        return out


def _prime_divisors(d: int) -> list[int]:
    out, p = [], 2
    while p * p <= d:
        if d % p == 0:
            out.append(p)
            while d % p == 0:
                d //= p
        p += 1
    if d > 1:
        out.append(d)
    return out


def rosser_upper(primes: Iterable[int], y: int, lower: int = 0) -> SieveWeights:
    P = sorted(set(int(p) for p in primes))
    bad = [p for p in P if p >= y]
    if bad:
        raise ValueError(f"sieving primes {bad[:3]} are not below the cut y = {y}")
    weights = {}
    for idx in _rosser_support(P, y):
        weights[math.prod(P[i] for i in idx)] = Fraction((-1) ** len(idx))
    return SieveWeights(tuple(P), y, weights, lower)


@dataclass(frozen=True)
class SigmaWeights:
    """sigma_1 = 0, sigma_d = -lambda+_d for d != 1."""

    source: SieveWeights
    sigma: dict[int, Fraction] = field(repr=False)

    @property
    def lower(self) -> int:
        return self.source.lower

    @property
    def upper(self) -> int:
        return self.source.cut

    def divisor_sums(self, lo: int, hi: int) -> np.ndarray:
        """sum_{d|n} sigma_d for lo <= n < hi."""
        out = np.zeros(hi - lo, dtype=np.int64)
        for d, s in self.sigma.items():
            out[(-lo) % d :: d] += int(s)
        return out

    def sum_over_divisors(self, n: int) -> Fraction:
        if n == 0:
            return sum(self.sigma.values(), Fraction(0))
        return sum((s for d, s in self.sigma.items() if n % d == 0), Fraction(0))

    def defect(self, n: int) -> Fraction:
        return 1 - self.sum_over_divisors(n)


def sigma_from_lambda(W: SieveWeights) -> SigmaWeights:
    return SigmaWeights(W, {d: -w for d, w in W.weights.items() if d != 1 and w})


def defect_sum(W: SigmaWeights, a: int, m: int, N1: int, N2: int, per_n: bool = False):
    """sum over N1 <= n < N2, n = a (mod m) of |1 - sum_{d|n} sigma_d|.

    Returns the exact sum, or (sum, per-n defects) when ``per_n`` is set.
    """
    if not 0 < m < W.lower:
        raise ValueError(f"modulus {m} must satisfy 0 < m < M1 = {W.lower}")
    if N2 < N1:
        raise ValueError("N2 must be >= N1")
    if N1 < 1:
        raise ValueError("ranges start at n >= 1")
    defects = np.abs(1 - W.divisor_sums(N1, N2))
    start = (a - N1) % m
    picked = defects[start::m]
    total = int(picked.sum())
    return (total, picked) if per_n else total


def defect_bound_shape(W: SigmaWeights, m: int, N1: int, N2: int) -> float:
    """(prod over skipped primes (1-1/p)^-1) * log M1/log M2 * (N2-N1)/m + M2."""
    M1, M2 = W.lower, W.upper
    pset = set(W.source.primes)
    factor = 1.0
    for p in range(max(M1, 2), M2):
        if p not in pset and all(p % q for q in range(2, math.isqrt(p) + 1)):
            factor /= 1 - 1 / p
    return factor * math.log(M1) / math.log(M2) * (N2 - N1) / m + M2


@dataclass(frozen=True)
class SplitSum:
    direct: complex
    main: complex
    divisor_side: complex
    defect_bound: Fraction

    def bracketed(self) -> bool:
        return abs(self.direct - self.main) <= self.defect_bound


def split_triple_sum(
    W: SigmaWeights,
    g: Callable[[int], complex],
    f: Callable[[int, int], complex],
    S: ConvexRegion,
    L: LatticeCoset,
) -> SplitSum:
    """Both sides of the anti-sieve splitting of sum_{(x,y) in S∩L} g(x) f(x, y).

    ``main`` is sum_{a,b,c : (ab, c) in S∩L} sigma_a g(a) g(b) f(ab, c),
    enumerated over a in the support of sigma.  ``divisor_side`` is the same
    quantity summed point by point, sum_{(x,y)} sum_{d|x} sigma_d g(x) f(x, y);
    the two agree exactly when g is completely multiplicative.
    ``defect_bound`` is sum_{(x,y) in S∩L} |1 - sum_{d|x} sigma_d|.
    """
    if L.index >= W.lower:
        raise ValueError(f"coset index {L.index} must be below M1 = {W.lower}")
    direct = divisor_side = 0
    defect = Fraction(0)
    for y, start, step, count in row_iterator(S, L):
        for x in range(start, start + step * count, step):
            gf = g(x) * f(x, y)
            direct += gf
            divisor_side += W.sum_over_divisors(x) * gf
            defect += abs(W.defect(x))
    main = 0
    if S.bbox is not None:
        xmin, ymin, xmax, ymax = S.bbox
        cs = range(math.ceil(ymin), math.floor(ymax) + 1)
        for a_, s in W.sigma.items():
            for b in range(math.ceil(xmin / a_), math.floor(xmax / a_) + 1):
                x = a_ * b
                for c in cs:
                    if (x, c) in L and (x, c) in S:
                        main += s * g(a_) * g(b) * f(x, c)
    return SplitSum(direct, main, divisor_side, defect)


# ---------------------------------------------------------------------------
# Ideal version


@dataclass(frozen=True)
class IdealSigmaWeights:
    field: QuadField
    primes: tuple[PrimeIdeal, ...]
    cut: int
    lam: dict[Ideal, int] = field(repr=False)

    @property
    def sigma(self) -> dict[Ideal, int]:
        one = Ideal.unit(self.field)
        return {I: -w for I, w in self.lam.items() if I != one}

    @property
    def lower(self) -> int:
        return min((q.norm for q in self.primes), default=self.cut)

    def lambda_divisor_sums(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """sum over ideals D | (z) of lambda+_D, z = x + y*w elementwise."""
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
        for I, w in self.lam.items():
            out += w * I.contains_array(x, y)
        return out

    def defect(self, z: QuadInt) -> int:
        return 1 - sum(s for I, s in self.sigma.items() if z in I)


def ideal_sigma(field: QuadField, primes: Iterable[PrimeIdeal], y: int) -> IdealSigmaWeights:
    """Rosser weights keyed by ideal norms; primes ordered by (norm, HNF)."""
    P = sorted(set(primes), key=lambda q: q.ideal.sort_key())
    bad = [q for q in P if q.norm >= y]
    if bad:
        raise ValueError(f"prime ideal {bad[0].ideal} has norm {bad[0].norm} >= y = {y}")
    lam: dict[Ideal, int] = {}
    for idx in _rosser_norm_support([q.norm for q in P], y):
        I = Ideal.unit(field)
        for i in idx:
            I = I * P[i].ideal
        lam[I] = (-1) ** len(idx)
    return IdealSigmaWeights(field, tuple(P), y, lam)


def _rosser_norm_support(norms: list[int], y: int) -> list[tuple[int, ...]]:
    """Same rule as the rational case, on positions of a norm-sorted list.

    Ties in norm are ordered by position, which keeps products squarefree.
    """
    return _rosser_support(norms, y)
