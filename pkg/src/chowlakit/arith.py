"""Elementary arithmetic: the Liouville function and its companions.

Everything here is exact integer arithmetic.  The table constructors use a
smallest-prime-factor sieve; the scalar functions factor on demand through
:mod:`chowlakit.factor`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .factor import FactoredInteger, factorize

# Default ceiling on table memory, in bytes.
DEFAULT_TABLE_BUDGET = 1 << 30


class TableTooSmall(MemoryError):
    """A lookup table does not reach a required value.

    ``required`` carries the limit that would have been large enough.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


def liouville(n: int) -> int:
    """lambda(n) = (-1)**Omega(|n|), with lambda(0) = 0."""
    if n == 0:
        return 0
    omega = sum(factorize(n).values())
    return -1 if omega & 1 else 1


def liouville_rational(num: int, den: int) -> int:
    if den == 0:
        raise ZeroDivisionError("liouville_rational: zero denominator")
    # lambda(den) is +-1, so dividing equals multiplying.
    return liouville(num) * liouville(den)


def sq_and_d(n: int) -> tuple[int, int]:
    """Return (sq(n), d_n): the largest s with s**2 | n, halved when 4 | n."""
    if n == 0:
        raise ValueError("sq_and_d: n must be nonzero")
    sq = 1
    for p, e in factorize(n).items():
        sq *= p ** (e // 2)
    d = sq // 2 if n % 4 == 0 else sq
    return sq, d


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = squarefree_part(n) * sq(n)**2."""
    sq, _ = sq_and_d(n)
    return n // (sq * sq)


def radical_and_mobius(n: int) -> tuple[int, int]:
    if n == 0:
        raise ValueError("radical_and_mobius: n must be nonzero")
    f = FactoredInteger.of(n)
    return f.radical, -1 if f.small_omega & 1 else 1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0 by the reciprocity ladder."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi: modulus must be odd and positive, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def odd_part(n: int) -> int:
    n = abs(n)
    if n == 0:
        raise ValueError("odd_part of 0")
    return n >> ((n & -n).bit_length() - 1)


def symbol_ab(a: int, b: int) -> int:
    """(a|b): product of Legendre symbols (a/p)**v_p(b) over odd primes p | b.

    The sign of b is ignored, and (a/p) = 0 when p | a.  This is the Jacobi
    symbol of a modulo the odd part of |b|.
    """
    if b == 0:
        raise ValueError("symbol_ab: b must be nonzero")
    return jacobi(a, odd_part(b))


def root_number(a: int, b: int) -> int:
    """Root number of y**2 = x(x+a)(x+b) for coprime a, b with ab(a-b) != 0."""
    if a == 0 or b == 0 or a == b:
        raise ValueError(f"root_number: degenerate curve (a, b) = ({a}, {b})")
    if math.gcd(a, b) != 1:
        raise ValueError(f"root_number: gcd({a}, {b}) != 1")
    fa, fb, fab = FactoredInteger.of(a), FactoredInteger.of(b), FactoredInteger.of(b - a)

    def odd_rad(f: FactoredInteger) -> int:
        return math.prod(p for p, _ in f.factors if p != 2)

    w = -symbol_ab(a, odd_rad(fb)) * symbol_ab(b, odd_rad(fa)) * symbol_ab(-a, odd_rad(fab))
    _, mu = radical_and_mobius(a * b * (a - b))
    return w * mu


# ---------------------------------------------------------------------------
# Tables


def _check_budget(limit: int, bytes_per_entry: int, budget: int | None) -> None:
    budget = DEFAULT_TABLE_BUDGET if budget is None else budget
    need = (limit + 1) * bytes_per_entry
    if need > budget:
        raise MemoryError(f"table to {limit} needs {need} bytes, budget is {budget}")


def spf_table(limit: int, budget: int | None = None) -> np.ndarray:
    """Smallest prime factor of every n <= limit (entries 0 and 1 are 0 and 1)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    _check_budget(limit, 4, budget)
    spf = np.zeros(limit + 1, dtype=np.uint32)
    spf[1] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.nonzero(spf == 0)[0]
    spf[rest] = rest
    spf[0] = 0
    return spf


def _fill_by_doubling(limit, spf, first, step):
    """Fill f[n] = step(f[n // spf[n]], n, spf[n]) in blocks [2**k, 2**(k+1)).

    n // spf[n] <= n // 2, so every block only reads finished entries.
    """
    out = np.empty(limit + 1, dtype=first.dtype)
    out[: len(first)] = first
    lo = 2
    while lo <= limit:
        hi = min(2 * lo, limit + 1)
        n = np.arange(lo, hi, dtype=np.int64)
        p = spf[lo:hi].astype(np.int64)
        out[lo:hi] = step(out[n // p], n, p)
        lo = hi
    return out


@dataclass(frozen=True, eq=False)
class LiouvilleTable:
    """lambda(n) for 0 <= n <= limit, plus the sieve data it was built from."""

    limit: int
    signs: np.ndarray
    spf: np.ndarray

    def __post_init__(self):
        self.signs.setflags(write=False)
        self.spf.setflags(write=False)

    def __getitem__(self, n):
        return self.signs[n]

    def __len__(self):
        return self.limit + 1

    def value(self, n: int) -> int:
        """lambda(n) for any integer: table lookup when |n| is covered, else factor."""
        n = abs(int(n))
        if n <= self.limit:
            return int(self.signs[n])
        return liouville(n)

    def lookup(self, values: np.ndarray) -> np.ndarray:
        """Vectorized lambda(|v|); raises TableTooSmall if any |v| exceeds the limit."""
        v = np.abs(values)
        if v.size and int(v.max()) > self.limit:
            raise TableTooSmall(
                f"value {int(v.max())} exceeds table limit {self.limit}", required=int(v.max())
            )
        return self.signs[v]

    def factor(self, n: int) -> FactoredInteger:
        return FactoredInteger.of(n, self.spf)

    def summatory(self, x: int) -> int:
        return int(self.signs[1 : x + 1].sum(dtype=np.int64))


def liouville_table(limit: int, budget: int | None = None) -> LiouvilleTable:
    """Build lambda(0..limit) from a smallest-prime-factor sieve."""
    _check_budget(limit, 5, budget)
    spf = spf_table(limit, budget)
    signs = _fill_by_doubling(
        limit, spf, np.array([0, 1], dtype=np.int8), lambda prev, n, p: -prev
    )
    return LiouvilleTable(limit, signs, spf)


def omega_table(spf: np.ndarray) -> np.ndarray:
    """Number of distinct prime factors of each n < len(spf); entry 0 is 0."""
    limit = len(spf) - 1

    def step(prev, n, p):
        return prev + ((n // p) % p != 0)

    return _fill_by_doubling(limit, spf, np.array([0, 0], dtype=np.int8), step)


def radical_table(spf: np.ndarray) -> np.ndarray:
    """rad(n) for each n < len(spf); entry 0 is 0."""
    limit = len(spf) - 1

    def step(prev, n, p):
        return np.where((n // p) % p == 0, prev, prev * p)

    return _fill_by_doubling(limit, spf, np.array([0, 1], dtype=np.int64), step)


def jacobi_array(a: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Elementwise Jacobi symbol (a/n) for int64 arrays with n odd and positive."""
    a = np.asarray(a, dtype=np.int64)
    n = np.asarray(n, dtype=np.int64).copy()
    a, n = np.broadcast_arrays(a, n)
    a = a % n
    n = n.copy()
    result = np.ones(a.shape, dtype=np.int64)
    active = a != 0
    while active.any():
        even = active & (a % 2 == 0)
        while even.any():
            a[even] //= 2
            flip = even & ((n % 8 == 3) | (n % 8 == 5))
            result[flip] = -result[flip]
            even = active & (a % 2 == 0)
        a_act, n_act = a[active], n[active]
        flip = (a_act % 4 == 3) & (n_act % 4 == 3)
        r = result[active]
        r[flip] = -r[flip]
        result[active] = r
        a[active], n[active] = n_act % a_act, a_act
        active = a != 0
    return np.where(n == 1, result, 0)

