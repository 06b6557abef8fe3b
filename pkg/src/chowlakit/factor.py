"""Integer factorization backend.

Small integers are split with a smallest-prime-factor table when one is
supplied; everything else goes through trial division by small primes,
a Baillie-PSW primality test and Brent's variant of Pollard rho.
Inputs are limited to 128 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

MAX_BITS = 128

_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1))]


class FactorizationError(ArithmeticError):
    """Raised when an integer falls outside the supported range."""


def _check_range(n: int) -> None:
    if abs(n).bit_length() > MAX_BITS:
        raise FactorizationError(f"|{n}| exceeds {MAX_BITS} bits")


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
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


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge method A for (D, P, Q).
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 21 and math.isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x: int) -> int:
        return (x + n) // 2 % n if x % 2 else x // 2 % n

    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Baillie-PSW test; exact for every n below 2**64 and no known failures above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 1_000_000:
        return True
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise FactorizationError(f"Pollard rho failed on {n}")


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) by Newton's method."""
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int]:
    """(r, k) with n = r**k for the smallest prime k that works, else (n, 1).

    Rho needs about sqrt(p) steps on p**k, so powers are peeled off first.
    """
    for k in _SMALL_PRIMES:
        if (1 << k) > n:
            break
        r = _iroot(n, k)
        if r**k == n:
            return r, k
    return n, 1


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root, k = _perfect_power(n)
    if k > 1:
        inner: dict[int, int] = {}
        _factor_into(root, inner)
        for q, e in inner.items():
            out[q] = out.get(q, 0) + e * k
        return
    d = _brent_rho(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factorize(n: int, spf=None) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{prime: exponent}``.

    ``spf`` is an optional smallest-prime-factor array; it is used while
    the cofactor is inside its range.
    """
    if n == 0:
        raise FactorizationError("cannot factor 0")
    _check_range(n)
    n = abs(n)
    out: dict[int, int] = {}
    if spf is not None and n < len(spf):
        while n > 1:
            p = int(spf[n])
            out[p] = out.get(p, 0) + 1
            n //= p
        return out
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        _factor_into(n, out)
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class FactoredInteger:
    """A nonzero integer together with its prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...] = field(default=())

    @classmethod
    def of(cls, n: int, spf=None) -> "FactoredInteger":
        return cls(n, tuple(sorted(factorize(n, spf).items())))

    def __post_init__(self):
        if self.value == 0:
            raise FactorizationError("FactoredInteger must be nonzero")
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        if prod != abs(self.value):
            raise ValueError(f"factors {self.factors} do not multiply to |{self.value}|")

    @property
    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def small_omega(self) -> int:
        return len(self.factors)

    @property
    def radical(self) -> int:
        return math.prod(p for p, _ in self.factors)

    def valuation(self, p: int) -> int:
        return dict(self.factors).get(p, 0)
