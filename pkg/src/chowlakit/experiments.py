"""Measurement harness for Liouville sums over lattice points of convex regions.

Every sum is accumulated as an exact integer.  Work is split by lattice rows,
so serial and threaded runs give identical results.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import (
    LiouvilleTable,
    TableTooSmall,
    jacobi_array,
    liouville,
    omega_table,
    radical_table,
)
from .lattice import ConvexRegion, LatticeCoset, row_iterator

TRIPLE_LINEAR = "triple_linear"
QUAD_TIMES_LINEAR = "quad_times_linear"
TWISTED_TRIPLE = "twisted_triple"
ROOT_NUMBER = "root_number"
KINDS = (TRIPLE_LINEAR, QUAD_TIMES_LINEAR, TWISTED_TRIPLE, ROOT_NUMBER)


class FormError(ValueError):
    """A form specification violates its preconditions."""


@dataclass(frozen=True)
class FormSpec:
    """Which binary form is summed.

    ``coeffs`` holds the 3x2 matrix rows flattened for TRIPLE_LINEAR and
    (a1, ..., a5) for QUAD_TIMES_LINEAR; the other kinds take none.
    """

    kind: str
    coeffs: tuple[int, ...] = ()
    coprime: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.kind in (TWISTED_TRIPLE, ROOT_NUMBER):
            object.__setattr__(self, "coprime", True)
        self.validate()

    @classmethod
    def triple_linear(cls, matrix, coprime=False) -> "FormSpec":
        return cls(TRIPLE_LINEAR, tuple(v for row in matrix for v in row), coprime)

    @classmethod
    def quad_times_linear(cls, a1, a2, a3, a4, a5, coprime=False) -> "FormSpec":
        return cls(QUAD_TIMES_LINEAR, (a1, a2, a3, a4, a5), coprime)

    @classmethod
    def twisted_triple(cls) -> "FormSpec":
        return cls(TWISTED_TRIPLE)

    @classmethod
    def root_number_family(cls) -> "FormSpec":
        return cls(ROOT_NUMBER)

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise FormError(f"unknown form kind {self.kind!r}")
        c = self.coeffs
        if self.kind == TRIPLE_LINEAR:
            if len(c) != 6:
                raise FormError("triple_linear needs a 3x2 integer matrix")
            for i in range(3):
                if c[2 * i] == 0 and c[2 * i + 1] == 0:
                    raise FormError(f"triple_linear: row {i + 1} is zero")
        elif self.kind == QUAD_TIMES_LINEAR:
            if len(c) != 5:
                raise FormError("quad_times_linear needs five coefficients a1..a5")
            a1, a2, a3, a4, a5 = c
            disc = a2 * a2 - 4 * a1 * a3
            if disc >= 0 and math.isqrt(disc) ** 2 == disc:
                raise FormError(
                    f"quad_times_linear: quadratic part is reducible (discriminant {disc} is a square)"
                )
            if a4 == 0 and a5 == 0:
                raise FormError("quad_times_linear: linear factor (a4, a5) is zero")
        elif c:
            raise FormError(f"{self.kind} takes no coefficients")

    @property
    def matrix(self) -> tuple[tuple[int, int], ...]:
        c = self.coeffs
        return tuple((c[2 * i], c[2 * i + 1]) for i in range(len(c) // 2))

    @property
    def envelope_kind(self) -> str:
        return "sqrt" if self.kind in (TWISTED_TRIPLE, ROOT_NUMBER) else "log"

    def describe(self) -> str:
        c = self.coeffs
        if self.kind == TRIPLE_LINEAR:
            return "*".join(f"({a}x{b:+d}y)" for a, b in self.matrix)
        if self.kind == QUAD_TIMES_LINEAR:
            return f"({c[0]}x^2{c[1]:+d}xy{c[2]:+d}y^2)*({c[3]}x{c[4]:+d}y)"
        if self.kind == TWISTED_TRIPLE:
            return "(y|x)*xy(x-y)"
        return "W(E_{a,b})"

    def required_limit(self, S: ConvexRegion) -> int:
        """Largest |argument| handed to the lambda table over S's bounding box."""
        if S.bbox is None:
            return 1
        x0, y0, x1, y1 = S.bbox
        X = math.ceil(max(abs(x0), abs(x1)))
        Y = math.ceil(max(abs(y0), abs(y1)))
        c = self.coeffs
        if self.kind == TRIPLE_LINEAR:
            return max(abs(a) * X + abs(b) * Y for a, b in self.matrix)
        if self.kind == QUAD_TIMES_LINEAR:
            quad = abs(c[0]) * X * X + abs(c[1]) * X * Y + abs(c[2]) * Y * Y
            return max(quad, abs(c[3]) * X + abs(c[4]) * Y)
        return X + Y


class Tables:
    """The lambda table plus lazily built companions (omega, radical)."""

    def __init__(self, lam: LiouvilleTable, fallback: bool = False):
        self.lam = lam
        self.fallback = fallback
        self._omega = None
        self._rad = None

    @property
    def limit(self) -> int:
        return self.lam.limit

    @property
    def omega(self) -> np.ndarray:
        if self._omega is None:
            self._omega = omega_table(self.lam.spf)
        return self._omega

    @property
    def rad(self) -> np.ndarray:
        if self._rad is None:
            self._rad = radical_table(self.lam.spf)
        return self._rad

    def liouville(self, values: np.ndarray) -> np.ndarray:
        v = np.abs(values)
        if not self.fallback or v.size == 0 or int(v.max()) <= self.limit:
            return self.lam.lookup(v)
        out = np.empty(v.shape, dtype=np.int64)
        small = v <= self.limit
        out[small] = self.lam.signs[v[small]]
        out[~small] = [liouville(int(n)) for n in v[~small]]
        return out


def _odd_part(n: np.ndarray) -> np.ndarray:
    n = np.abs(n)
    return n // (n & -n)


def _odd_rad(tables: Tables, n: np.ndarray) -> np.ndarray:
    r = tables.rad[np.abs(n)]
    return np.where(r % 2 == 0, r // 2, r)


def _row_contributions(form: FormSpec, tables: Tables, xs: np.ndarray, y: int):
    """(sum of terms, admissible point count) for one lattice row."""
    ys = np.full_like(xs, y)
    if form.coprime:
        keep = np.gcd(xs, ys) == 1
        xs, ys = xs[keep], ys[keep]
    count = int(xs.size)
    if count == 0:
        return 0, 0
    lam = tables.liouville
    c = form.coeffs
    if form.kind == TRIPLE_LINEAR:
        t = lam(c[0] * xs + c[1] * ys) * lam(c[2] * xs + c[3] * ys) * lam(c[4] * xs + c[5] * ys)
    elif form.kind == QUAD_TIMES_LINEAR:
        q = c[0] * xs * xs + c[1] * xs * ys + c[2] * ys * ys
        t = lam(q) * lam(c[3] * xs + c[4] * ys)
    elif form.kind == TWISTED_TRIPLE:
        t = lam(xs) * lam(ys) * lam(xs - ys)
        nz = xs != 0
        twist = np.zeros_like(xs)
        twist[nz] = jacobi_array(ys[nz], _odd_part(xs[nz]))
        t = t * twist
    else:
        a, b = xs, ys
        ok = (a != 0) & (b != 0) & (a != b)
        a, b = a[ok], b[ok]
        count = int(a.size)
        if count == 0:
            return 0, 0
        need = int(np.abs(np.concatenate([a, b, b - a])).max())
        if need > tables.limit:
            raise TableTooSmall(f"root numbers need the table to {need}", required=need)
        om = tables.omega
        sign = np.where((om[np.abs(a)] + om[np.abs(b)] + om[np.abs(a - b)]) % 2 == 0, 1, -1)
        t = (
            -jacobi_array(a, _odd_rad(tables, b))
            * jacobi_array(b, _odd_rad(tables, a))
            * jacobi_array(-a, _odd_rad(tables, b - a))
            * sign
        )
    return int(t.sum(dtype=np.int64)), count


@dataclass
class ReportRow:
    form: FormSpec
    N: int
    raw: int
    count: int
    normalizer: Fraction
    millis: float = field(default=0.0, compare=False)

    @property
    def avg(self) -> float:
        return float(Fraction(self.raw) / self.normalizer) if self.normalizer else 0.0


def _partition(rows: list, parts: int) -> list[list]:
    size = max(1, math.ceil(len(rows) / parts))
    return [rows[i : i + size] for i in range(0, len(rows), size)]


def run_chowla(
    form: FormSpec,
    S: ConvexRegion,
    L: LatticeCoset,
    N: int,
    tables: Tables | LiouvilleTable,
    threads: int = 1,
) -> ReportRow:
    """Exact sum of the form's terms over S ∩ L (gcd filter where the form asks)."""
    if isinstance(tables, LiouvilleTable):
        tables = Tables(tables)
    need = form.required_limit(S)
    if need > tables.limit and not (tables.fallback and form.kind != ROOT_NUMBER):
        raise TableTooSmall(
            f"{form.describe()} over this region needs a table to {need}, have {tables.limit}",
            required=need,
        )
    t0 = time.perf_counter()
    rows = list(row_iterator(S, L))

    def work(chunk):
        raw = cnt = 0
        for y, start, step, count in chunk:
            xs = start + step * np.arange(count, dtype=np.int64)
            r, c = _row_contributions(form, tables, xs, y)
            raw += r
            cnt += c
        return raw, cnt

    if threads > 1 and len(rows) > 1:
        if form.kind == ROOT_NUMBER:
            _ = (tables.omega, tables.rad)  # build once, before the workers share them
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, _partition(rows, threads)))
    else:
        parts = [work(rows)]
    raw = sum(p[0] for p in parts)
    count = sum(p[1] for p in parts)
    normalizer = S.area() / L.index
    return ReportRow(form, N, raw, count, normalizer, (time.perf_counter() - t0) * 1000)


def run_root_number(S, L, N, tables, threads=1) -> ReportRow:
    return run_chowla(FormSpec.root_number_family(), S, L, N, tables, threads)


def _need(table: LiouvilleTable, x: int) -> None:
    if x > table.limit:
        raise TableTooSmall(f"need the table to {x}, have {table.limit}", required=x)


def run_progression(table: LiouvilleTable, x: int, m: int, a: int) -> int:
    """sum_{1 <= n <= x, n = a (mod m)} lambda(n)."""
    if x < 1:
        return 0
    _need(table, x)
    start = a % m or m
    return int(table.signs[start : x + 1 : m].sum(dtype=np.int64))


def run_short_interval(table: LiouvilleTable, x: int, h: int, m: int, a: int) -> int:
    """sum_{x < n <= x + h, n = a (mod m)} lambda(n)."""
    if h <= 0:
        return 0
    _need(table, x + h)
    lo = x + 1
    start = lo + (a - lo) % m
    return int(table.signs[start : x + h + 1 : m].sum(dtype=np.int64))


def bv_cutoff(N: int, A: float) -> int:
    """floor(sqrt(N) / (log N)**(2A + 6))."""
    if N < 2:
        return 0
    return math.floor(math.sqrt(N) / math.log(N) ** (2 * A + 6))


def max_progression_sum(table: LiouvilleTable, N: int, m: int) -> int:
    """max over residues a and x <= N of |sum_{n <= x, n = a (m)} lambda(n)|."""
    _need(table, N)
    vals = table.signs[1 : N + 1].astype(np.int64)
    rows = math.ceil(N / m)
    padded = np.zeros(rows * m, dtype=np.int64)
    padded[:N] = vals
    # column j holds n = j + 1, j + 1 + m, ...; the empty prefix contributes 0
    prefix = np.cumsum(padded.reshape(rows, m), axis=0)
    return int(np.abs(prefix).max(initial=0))


def run_bv(table: LiouvilleTable, N: int, A: float, m_max: int | None = None) -> int:
    """sum_{m <= M} max_a max_{x <= N} |sum_{n <= x, n = a (m)} lambda(n)|.

    M defaults to floor(sqrt(N) / (log N)**(2A + 6)); pass ``m_max`` to
    measure a wider range of moduli.
    """
    M = bv_cutoff(N, A) if m_max is None else m_max
    return sum(max_progression_sum(table, N, m) for m in range(1, M + 1))


# ---------------------------------------------------------------------------
# Decay reports


def envelope(N: int, kind: str = "log") -> float:
    """log log N / log N, or log log N / sqrt(log N) for kind='sqrt'."""
    ll = math.log(math.log(N))
    return ll / (math.sqrt(math.log(N)) if kind == "sqrt" else math.log(N))


@dataclass(frozen=True)
class DecayLine:
    N: int
    avg: float
    envelope: float
    ratio: float


@dataclass(frozen=True)
class DecayReport:
    lines: tuple[DecayLine, ...]

    @property
    def constant(self) -> float:
        """Smallest C with |avg(N)| <= C * envelope(N) on the grid."""
        return max((ln.ratio for ln in self.lines), default=0.0)


def decay_report(rows: list[ReportRow], kind: str | None = None) -> DecayReport:
    if len(rows) < 2:
        raise ValueError("decay_report needs at least two grid points")
    kind = kind or rows[0].form.envelope_kind
    lines = []
    for r in sorted(rows, key=lambda r: r.N):
        env = envelope(r.N, kind)
        lines.append(DecayLine(r.N, r.avg, env, abs(r.avg) / env))
    return DecayReport(tuple(lines))
