"""Arithmetic in quadratic fields K = Q(sqrt(d)).

Elements of O_K are integer pairs (x, y) meaning x + y*w, where w = sqrt(d)
if d != 1 (mod 4) and w = (1 + sqrt(d))/2 otherwise.  Ideals are Z-modules
in the same coordinates, kept in the row HNF used by :mod:`.lattice`:
the ideal <a, b + c*w> has rows (a, 0), (b, c) and norm a*c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .arith import jacobi, sq_and_d, squarefree_part
from .factor import factorize, is_prime
from .lattice import hnf


@dataclass(frozen=True)
class QuadField:
    d: int

    def __post_init__(self):
        if self.d in (0, 1) or squarefree_part(self.d) != self.d:
            raise ValueError(f"d = {self.d} must be squarefree and different from 0, 1")

    @property
    def one_mod_four(self) -> bool:
        return self.d % 4 == 1

    @property
    def disc(self) -> int:
        return self.d if self.one_mod_four else 4 * self.d

    def __str__(self):
        return f"Q(sqrt({self.d}))"

    def __call__(self, x: int, y: int = 0) -> "QuadInt":
        return QuadInt(self, int(x), int(y))

    @property
    def omega(self) -> "QuadInt":
        return QuadInt(self, 0, 1)

    def from_sqrt_coords(self, r, s) -> "QuadInt":
        """The element r + s*sqrt(d); raises if it is not an algebraic integer."""
        r, s = Fraction(r), Fraction(s)
        if self.one_mod_four:
            x, y = r - s, 2 * s
        else:
            x, y = r, s
        if x.denominator != 1 or y.denominator != 1:
            raise ValueError(f"{r} + {s}*sqrt({self.d}) is not in O_K")
        return QuadInt(self, int(x), int(y))

    def norm_array(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.one_mod_four:
            return x * x + x * y + ((1 - self.d) // 4) * y * y
        return x * x - self.d * y * y

    def kronecker(self, p: int) -> int:
        """(disc/p) for a rational prime p."""
        D = self.disc
        if p == 2:
            if D % 2 == 0:
                return 0
            return 1 if D % 8 in (1, 7) else -1
        return jacobi(D, p)


@dataclass(frozen=True)
class QuadInt:
    field: QuadField
    x: int
    y: int

    def __repr__(self):
        return f"QuadInt(d={self.field.d}, {self.x} + {self.y}w)"

    @property
    def coords(self) -> tuple[int, int]:
        return self.x, self.y

    @property
    def re(self) -> Fraction:
        """r in r + s*sqrt(d)."""
        return Fraction(2 * self.x + self.y, 2) if self.field.one_mod_four else Fraction(self.x)

    @property
    def im(self) -> Fraction:
        """s in r + s*sqrt(d)."""
        return Fraction(self.y, 2) if self.field.one_mod_four else Fraction(self.y)

    def size(self) -> Fraction:
        """max(|r|, |s|) for the element r + s*sqrt(d)."""
        return max(abs(self.re), abs(self.im))

    def _same(self, other) -> "QuadInt":
        if isinstance(other, int):
            return QuadInt(self.field, other, 0)
        if other.field != self.field:
            raise ValueError("elements of different fields")
        return other

    def __add__(self, other):
        o = self._same(other)
        return QuadInt(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(self.field, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, other):
        o = self._same(other)
        d = self.field.d
        x1, y1, x2, y2 = self.x, self.y, o.x, o.y
        if self.field.one_mod_four:
            # w**2 = w + (d - 1)/4
            k = (d - 1) // 4
            return QuadInt(self.field, x1 * x2 + k * y1 * y2, x1 * y2 + x2 * y1 + y1 * y2)
        return QuadInt(self.field, x1 * x2 + d * y1 * y2, x1 * y2 + x2 * y1)

    __rmul__ = __mul__

    def conj(self) -> "QuadInt":
        if self.field.one_mod_four:
            return QuadInt(self.field, self.x + self.y, -self.y)
        return QuadInt(self.field, self.x, -self.y)

    def norm(self) -> int:
        return int(self.field.norm_array(self.x, self.y))


def embed_j(z: QuadInt) -> tuple[int, int]:
    """(r, s) if d != 1 (mod 4), (r - s, 2s) if d = 1 (mod 4), for z = r + s*sqrt(d)."""
    r, s = z.re, z.im
    if z.field.one_mod_four:
        u, v = r - s, 2 * s
    else:
        u, v = r, s
    return int(u), int(v)


def embed_j_inverse(field: QuadField, u: int, v: int) -> QuadInt:
    if field.one_mod_four:
        return field.from_sqrt_coords(Fraction(u) + Fraction(v, 2), Fraction(v, 2))
    return field.from_sqrt_coords(u, v)


# ---------------------------------------------------------------------------
# Ideals


@dataclass(frozen=True)
class Ideal:
    """Nonzero O_K-ideal <a, b + c*w> in row HNF."""

    field: QuadField
    a: int
    b: int
    c: int

    def __repr__(self):
        return f"Ideal(d={self.field.d}, <{self.a}, {self.b} + {self.c}w>)"

    @classmethod
    def generated_by(cls, field: QuadField, *gens) -> "Ideal":
        w = field.omega
        vecs = []
        for g in gens:
            g = QuadInt(field, g, 0) if isinstance(g, int) else g
            vecs += [g.coords, (g * w).coords]
        return cls(field, *hnf(vecs))

    @classmethod
    def unit(cls, field: QuadField) -> "Ideal":
        return cls(field, 1, 0, 1)

    @classmethod
    def rational(cls, field: QuadField, n: int) -> "Ideal":
        if n == 0:
            raise ValueError("the zero ideal is not supported")
        return cls(field, abs(n), 0, abs(n))

    @property
    def norm(self) -> int:
        return self.a * self.c

    @property
    def gens(self) -> tuple[QuadInt, QuadInt]:
        return QuadInt(self.field, self.a, 0), QuadInt(self.field, self.b, self.c)

    def __contains__(self, z) -> bool:
        x, y = z.coords if isinstance(z, QuadInt) else z
        k, r = divmod(y, self.c)
        return r == 0 and (x - self.b * k) % self.a == 0

    def contains_array(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        k, r = np.divmod(y, self.c)
        return (r == 0) & ((x - self.b * k) % self.a == 0)

    def is_ideal(self) -> bool:
        """Closure under multiplication by w."""
        w = self.field.omega
        return all(g * w in self for g in self.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        gens = [g * h for g in self.gens for h in other.gens]
        return Ideal(self.field, *hnf([g.coords for g in gens]))

    def __pow__(self, k: int) -> "Ideal":
        out = Ideal.unit(self.field)
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> "Ideal":
        return Ideal.generated_by(self.field, *(g.conj() for g in self.gens))

    def divides(self, other: "Ideal") -> bool:
        return all(g in self for g in other.gens)

    def content(self) -> int:
        """Largest rational integer n with I contained in (n)."""
        return math.gcd(self.a, self.b, self.c)

    def is_primitive(self) -> bool:
        return self.content() == 1

    def exact_div_rational(self, n: int) -> "Ideal":
        if self.a % n or self.b % n or self.c % n:
            raise ValueError(f"{self} is not divisible by ({n})")
        return Ideal(self.field, self.a // n, self.b // n, self.c // n)

    def sort_key(self):
        return self.norm, self.a, self.b, self.c


@dataclass(frozen=True)
class PrimeIdeal:
    ideal: Ideal
    p: int
    inertia: int

    @property
    def norm(self) -> int:
        return self.p**self.inertia


@dataclass(frozen=True)
class Splitting:
    p: int
    kind: str  # "split", "inert" or "ramified"
    primes: tuple[PrimeIdeal, ...]

    def product(self) -> Ideal:
        """Product of the primes with multiplicity; equals (p)."""
        field = self.primes[0].ideal.field
        out = Ideal.unit(field)
        mult = 2 if self.kind == "ramified" else 1
        for q in self.primes:
            out = out * q.ideal**mult
        return out


def _sqrt_mod_prime(n: int, p: int) -> int | None:
    """A square root of n modulo the prime p (Tonelli-Shanks), or None."""
    n %= p
    if p == 2 or n == 0:
        return n
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _min_poly_roots(field: QuadField, p: int) -> list[int]:
    """Roots mod p of the minimal polynomial of w."""
    if field.one_mod_four:
        k = (field.d - 1) // 4  # X^2 - X - k
        if p == 2:
            return [t for t in (0, 1) if (t * t - t - k) % 2 == 0]
        r = _sqrt_mod_prime(1 + 4 * k, p)
        if r is None:
            return []
        inv2 = (p + 1) // 2
        return sorted({(1 + r) * inv2 % p, (1 - r) * inv2 % p})
    if p == 2:
        return [t for t in (0, 1) if (t * t - field.d) % 2 == 0]
    r = _sqrt_mod_prime(field.d, p)
    return [] if r is None else sorted({r, (-r) % p})


def factor_prime(field: QuadField, p: int) -> Splitting:
    """Decompose the rational prime p in O_K (Dedekind-Kummer; O_K = Z[w])."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    roots = _min_poly_roots(field, p)
    mk = lambda t: Ideal.generated_by(field, QuadInt(field, p, 0), QuadInt(field, -t, 1))
    if not roots:
        return Splitting(p, "inert", (PrimeIdeal(Ideal.rational(field, p), p, 2),))
    if len(roots) == 1:
        return Splitting(p, "ramified", (PrimeIdeal(mk(roots[0]), p, 1),))
    return Splitting(p, "split", tuple(PrimeIdeal(mk(t), p, 1) for t in roots))


def factor_ideal(I: Ideal) -> list[tuple[PrimeIdeal, int]]:
    """Prime factorization of I, primes ordered by (norm, HNF)."""
    out = []
    for p in factorize(I.norm) if I.norm > 1 else {}:
        spl = factor_prime(I.field, p)
        for q in spl.primes:
            if spl.kind == "inert":
                e = 0
                while q.ideal.divides(I):
                    I = I.exact_div_rational(p)
                    e += 1
            else:
                e = 0
                qbar = q.ideal.conj()
                while q.ideal.divides(I):
                    I = (I * qbar).exact_div_rational(p)
                    e += 1
            if e:
                out.append((q, e))
    if I.norm != 1:
        raise ArithmeticError(f"incomplete factorization, leftover {I}")
    out.sort(key=lambda qe: qe[0].ideal.sort_key())
    return out


def lambda_ext(I: Ideal) -> int:
    """Exponent k (mod 4) with lambda(I) = i**k, i.e. sum of f(p)*e over the factorization."""
    return sum(q.inertia * e for q, e in factor_ideal(I)) % 4


def lambda_K(I: Ideal) -> int:
    """(-1)**(sum of exponents), ignoring inertia degrees."""
    return -1 if sum(e for _, e in factor_ideal(I)) & 1 else 1


# ---------------------------------------------------------------------------
# Quadratic forms and norms


@dataclass(frozen=True)
class FormNorm:
    """a*Q(x, y) = N(x*alpha1 + y*alpha2) with alpha_i in O_K."""

    field: QuadField
    alpha1: QuadInt
    alpha2: QuadInt
    index: int
    disc: int

    def check_identity(self, a: int, b: int, c: int, bound: int) -> bool:
        r = np.arange(-bound, bound + 1, dtype=object)
        X, Y = np.meshgrid(r, r)
        u = X * self.alpha1.x + Y * self.alpha2.x
        v = X * self.alpha1.y + Y * self.alpha2.y
        lhs = a * (a * X * X + b * X * Y + c * Y * Y)
        return bool(np.all(lhs == self.field.norm_array(u, v)))


def form_to_norm(a: int, b: int, c: int) -> FormNorm:
    """alpha1 = a, alpha2 = (b + sqrt(b^2 - 4ac))/2 and the index of Z alpha1 + Z alpha2 in O_K."""
    if a == 0:
        raise ValueError("form_to_norm: a must be nonzero")
    if math.gcd(a, b, c) != 1:
        raise ValueError(f"form ({a}, {b}, {c}) is not primitive")
    D = b * b - 4 * a * c
    if D >= 0 and math.isqrt(D) ** 2 == D:
        raise ValueError(f"form ({a}, {b}, {c}) is reducible: discriminant {D} is a square")
    s, _ = sq_and_d(D)
    field = QuadField(D // (s * s))
    alpha1 = field(a)
    alpha2 = field.from_sqrt_coords(Fraction(b, 2), Fraction(s, 2))
    index = abs(alpha1.x * alpha2.y - alpha1.y * alpha2.x)
    return FormNorm(field, alpha1, alpha2, index, D)


def count_bounded_norm(field: QuadField, N: int, A: int) -> int:
    """#{z in O_K : j(z) in [-N, N]^2, |N(z)| <= A} by direct scan."""
    # j coincides with integral-basis coordinates in both cases of d mod 4.
    r = np.arange(-N, N + 1, dtype=np.int64)
    total = 0
    for u in range(-N, N + 1):
        norms = field.norm_array(np.full_like(r, u), r)
        total += int(np.count_nonzero(np.abs(norms) <= A))
    return total


def ideal_row_progression(I: Ideal, y0: int) -> tuple[int, int] | None:
    """{x : j^-1(x, y0) in I} as (residue, modulus = N(I)), or None when empty."""
    if not I.is_primitive():
        raise ValueError(f"{I} is divisible by the rational integer {I.content()}")
    k, r = divmod(y0, I.c)
    if r:
        return None
    return (I.b * k) % I.a, I.a
