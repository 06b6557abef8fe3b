"""Lattice cosets in Z^2 and exact point counting in convex polygons.

A lattice is stored by its row-style Hermite normal form

    (a, 0)
    (b, c)        a, c > 0,  0 <= b < a,

so its points are k1*(a, 0) + k2*(b, c).  Every horizontal line y = const
meets a coset of it in nothing or in one arithmetic progression of step
``a``; consecutive occupied lines are ``c`` apart.  That row structure
drives intersection, pullback and counting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def solve_congruence(a: int, b: int, m: int) -> tuple[int, int] | None:
    """Solve a*t = b (mod m), m > 0.  Returns (t0, step) or None."""
    g, s, _ = xgcd(a % m, m)
    if b % g:
        return None
    step = m // g
    return (s * (b // g)) % step, step


def crt(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    sol = solve_congruence(m1, r2 - r1, m2)
    if sol is None:
        return None
    t, _ = sol
    m = m1 // math.gcd(m1, m2) * m2
    return (r1 + m1 * t) % m, m


def hnf(vectors: Sequence[tuple[int, int]]) -> tuple[int, int, int]:
    """Row HNF (a, b, c) of the lattice spanned by integer vectors.

    Raises ValueError if the vectors do not span a full-rank lattice.
    """
    pivot = None
    flat = 0
    for x, y in vectors:
        x, y = int(x), int(y)
        if y == 0:
            flat = math.gcd(flat, x)
            continue
        if pivot is None:
            pivot = (x, y)
            continue
        px, py = pivot
        g, s, t = xgcd(py, y)
        pivot = (s * px + t * x, g)
        flat = math.gcd(flat, (y // g) * px - (py // g) * x)
    if pivot is None or flat == 0:
        raise ValueError("vectors do not span a lattice of finite index")
    px, py = pivot
    if py < 0:
        px, py = -px, -py
    return flat, px % flat, py


@dataclass(frozen=True)
class LatticeCoset:
    """offset + span{(a, 0), (b, c)}, stored in canonical reduced form."""

    a: int
    b: int
    c: int
    x0: int = 0
    y0: int = 0

    def __post_init__(self):
        if self.a <= 0 or self.c <= 0:
            raise ValueError(f"HNF diagonal must be positive, got a={self.a}, c={self.c}")
        a, c = self.a, self.c
        b = self.b % a
        k, y0 = divmod(self.y0, c)
        x0 = (self.x0 - b * k) % a
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "y0", y0)

    @classmethod
    def whole(cls) -> "LatticeCoset":
        return cls(1, 0, 1)

    @classmethod
    def from_generators(cls, vectors, offset=(0, 0)) -> "LatticeCoset":
        a, b, c = hnf(vectors)
        return cls(a, b, c, int(offset[0]), int(offset[1]))

    @classmethod
    def congruence(cls, mx: int = 1, rx: int = 0, my: int = 1, ry: int = 0) -> "LatticeCoset":
        """{(x, y) : x = rx mod mx, y = ry mod my}."""
        return cls(mx, 0, my, rx, ry)

    @property
    def basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, 0), (self.b, self.c)

    @property
    def offset(self) -> tuple[int, int]:
        return self.x0, self.y0

    @property
    def index(self) -> int:
        return self.a * self.c

    def row(self, y: int) -> tuple[int, int] | None:
        """The progression {x : (x, y) in L} as (residue, modulus), or None."""
        k, r = divmod(y - self.y0, self.c)
        if r:
            return None
        return (self.x0 + self.b * k) % self.a, self.a

    def __contains__(self, point) -> bool:
        x, y = point
        row = self.row(int(y))
        return row is not None and (int(x) - row[0]) % self.a == 0

    def contains_array(self, xs, ys) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        k, r = np.divmod(ys - self.y0, self.c)
        return (r == 0) & ((xs - self.x0 - self.b * k) % self.a == 0)


def intersect(l1: LatticeCoset, l2: LatticeCoset) -> LatticeCoset | None:
    """Exact intersection of two cosets; None when it is empty."""
    ys = crt(l1.y0, l1.c, l2.y0, l2.c)
    if ys is None:
        return None
    Y, C = ys
    # On row y = Y + C*t coset i asks for x = alpha_i + beta_i*t (mod a_i).
    alpha1 = l1.x0 + l1.b * ((Y - l1.y0) // l1.c)
    alpha2 = l2.x0 + l2.b * ((Y - l2.y0) // l2.c)
    beta1 = l1.b * (C // l1.c)
    beta2 = l2.b * (C // l2.c)
    g = math.gcd(l1.a, l2.a)
    ts = solve_congruence(beta1 - beta2, alpha2 - alpha1, g)
    if ts is None:
        return None
    t0, s = ts

    def x_at(t):
        return crt((alpha1 + beta1 * t) % l1.a, l1.a, (alpha2 + beta2 * t) % l2.a, l2.a)[0]

    A = l1.a // g * l2.a
    first = x_at(t0)
    return LatticeCoset(A, x_at(t0 + s) - first, C * s, first, Y + C * t0)


def _as_fraction_matrix(M):
    return [[Fraction(v) for v in row] for row in M]


def _integral(v: Fraction, what: str) -> int:
    if v.denominator != 1:
        raise ValueError(f"affine image has non-integral {what}: {v}")
    return int(v)


def affine_image(M, L: LatticeCoset) -> LatticeCoset:
    """The coset M*L for a nonsingular 2x2 matrix M acting on column vectors.

    Rational entries are allowed as long as the image lands in Z^2.
    """
    (m11, m12), (m21, m22) = _as_fraction_matrix(M)
    if m11 * m22 - m12 * m21 == 0:
        raise ValueError("affine_image: singular matrix")

    def apply(v, what):
        x, y = v
        return (_integral(m11 * x + m12 * y, what), _integral(m21 * x + m22 * y, what))

    gens = [apply(v, "basis vector") for v in L.basis]
    return LatticeCoset.from_generators(gens, apply(L.offset, "offset"))


def _scale_second_preimage(L: LatticeCoset, c: int) -> LatticeCoset | None:
    """{(u, v) : (u, c*v) in L}."""
    sol = solve_congruence(c, L.y0, L.c)
    if sol is None:
        return None
    beta, step = sol
    g = L.c // step
    shift = (c * beta - L.y0) // L.c
    return LatticeCoset(L.a, L.b * (c // g), step, L.x0 + L.b * shift, beta)


def pullback_pair(L: LatticeCoset, c1: int, c2: int) -> LatticeCoset | None:
    """{(u, v) : (u, v*c1) in L and (u, v*c2) in L}, or None when empty."""
    if c1 == 0 or c2 == 0:
        raise ValueError("pullback_pair: c1 and c2 must be nonzero")
    p1 = _scale_second_preimage(L, c1)
    p2 = _scale_second_preimage(L, c2)
    if p1 is None or p2 is None:
        return None
    return intersect(p1, p2)


# ---------------------------------------------------------------------------
# Convex regions


def _cross(o, p, q) -> Fraction:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


class ConvexRegion:
    """Closed convex polygon with rational vertices in counterclockwise order.

    Degenerate polygons (empty, a point, a segment) are allowed.
    """

    def __init__(self, vertices=()):
        pts = [(Fraction(x), Fraction(y)) for x, y in vertices]
        n = len(pts)
        if n >= 3:
            for i in range(n):
                if _cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) < 0:
                    raise ValueError("vertices are not convex in counterclockwise order")
        self.vertices: tuple[tuple[Fraction, Fraction], ...] = tuple(pts)
        if pts:
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            self.bbox = (min(xs), min(ys), max(xs), max(ys))
        else:
            self.bbox = None
        if n == 1:
            self._edges = [(pts[0], pts[0])]
        else:
            self._edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]

    def __repr__(self):
        vs = ", ".join(f"({x}, {y})" for x, y in self.vertices)
        return f"ConvexRegion([{vs}])"

    def __eq__(self, other):
        return isinstance(other, ConvexRegion) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    @classmethod
    def hull(cls, points) -> "ConvexRegion":
        """Convex hull (monotone chain), collinear points dropped."""
        pts = sorted({(Fraction(x), Fraction(y)) for x, y in points})
        if len(pts) <= 2:
            return cls(pts)

        def chain(seq):
            out = []
            for p in seq:
                while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                    out.pop()
                out.append(p)
            return out

        lower, upper = chain(pts), chain(reversed(pts))
        return cls(lower[:-1] + upper[:-1])

    @classmethod
    def box(cls, x0, y0, x1, y1) -> "ConvexRegion":
        return cls.hull([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])

    def area(self) -> Fraction:
        n = len(self.vertices)
        if n < 3:
            return Fraction(0)
        s = Fraction(0)
        for i in range(n):
            (x1, y1), (x2, y2) = self.vertices[i], self.vertices[(i + 1) % n]
            s += x1 * y2 - x2 * y1
        return s / 2

    def x_interval(self, y) -> tuple[Fraction, Fraction] | None:
        """Exact [x_min, x_max] of the horizontal section at height y."""
        y = Fraction(y)
        xs = []
        for p, q in self._edges:
            if p[1] == q[1]:
                if p[1] == y:
                    xs += [p[0], q[0]]
            elif min(p[1], q[1]) <= y <= max(p[1], q[1]):
                xs.append(p[0] + (y - p[1]) * (q[0] - p[0]) / (q[1] - p[1]))
        if not xs:
            return None
        return min(xs), max(xs)

    def __contains__(self, point) -> bool:
        iv = self.x_interval(point[1])
        return iv is not None and iv[0] <= point[0] <= iv[1]

    def affine(self, M, shift=(0, 0)) -> "ConvexRegion":
        """Image under v -> M v + shift."""
        (m11, m12), (m21, m22) = _as_fraction_matrix(M)
        pts = [
            (m11 * x + m12 * y + Fraction(shift[0]), m21 * x + m22 * y + Fraction(shift[1]))
            for x, y in self.vertices
        ]
        if m11 * m22 - m12 * m21 < 0:
            pts.reverse()
        return ConvexRegion(pts) if len(pts) < 3 else ConvexRegion.hull(pts)


def row_iterator(S: ConvexRegion, L: LatticeCoset) -> Iterator[tuple[int, int, int, int]]:
    """Yield (y, x_start, x_step, count) for every nonempty row of S ∩ L."""
    if S.bbox is None:
        return
    _, ymin, _, ymax = S.bbox
    lo = _ceil(ymin)
    y = lo + (L.y0 - lo) % L.c
    hi = _floor(ymax)
    while y <= hi:
        iv = S.x_interval(y)
        if iv is not None:
            xlo, xhi = _ceil(iv[0]), _floor(iv[1])
            r, step = L.row(y)
            start = xlo + (r - xlo) % step
            if start <= xhi:
                yield y, start, step, (xhi - start) // step + 1
        y += L.c


def count_points(S: ConvexRegion, L: LatticeCoset) -> int:
    """#(S ∩ L), boundary included."""
    return sum(row[3] for row in row_iterator(S, L))


def row_points(S: ConvexRegion, L: LatticeCoset):
    """Yield (y, xs) with xs an int64 array of the lattice points on that row."""
    for y, start, step, count in row_iterator(S, L):
        yield y, start + step * np.arange(count, dtype=np.int64)
