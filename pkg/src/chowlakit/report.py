"""Experiment configs and report serialization (CSV and JSON)."""

from __future__ import annotations

import csv
import io
import json
import os
import platform
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .experiments import FormSpec, ReportRow, envelope
from .lattice import ConvexRegion, LatticeCoset

REGION_TYPES = ("positive_box", "symmetric_box", "polygon")


class ConfigError(ValueError):
    pass


def _frac_str(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class RegionSpec:
    """A region family indexed by N.

    positive_box is [1, N]^2, symmetric_box is [-N, N]^2, and polygon
    scales the given vertices by N.
    """

    type: str = "positive_box"
    vertices: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        if self.type not in REGION_TYPES:
            raise ConfigError(f"unknown region type {self.type!r}")
        verts = tuple((Fraction(x), Fraction(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if self.type == "polygon":
            if not verts:
                raise ConfigError("polygon region needs vertices")
            ConvexRegion(verts)
        elif verts:
            raise ConfigError(f"{self.type} takes no vertices")

    def at(self, N: int) -> ConvexRegion:
        if self.type == "positive_box":
            return ConvexRegion.box(1, 1, N, N)
        if self.type == "symmetric_box":
            return ConvexRegion.box(-N, -N, N, N)
        return ConvexRegion([(x * N, y * N) for x, y in self.vertices])

    def to_dict(self) -> dict:
        d = {"type": self.type}
        if self.vertices:
            d["vertices"] = [[_frac_str(x), _frac_str(y)] for x, y in self.vertices]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RegionSpec":
        return cls(d.get("type", "positive_box"), tuple(tuple(v) for v in d.get("vertices", ())))


def form_to_dict(form: FormSpec) -> dict:
    return {"kind": form.kind, "coeffs": list(form.coeffs), "coprime": form.coprime}


def form_from_dict(d: dict) -> FormSpec:
    try:
        return FormSpec(d["kind"], tuple(d.get("coeffs", ())), bool(d.get("coprime", False)))
    except KeyError as e:
        raise ConfigError(f"form is missing {e}") from None


def coset_to_dict(L: LatticeCoset) -> dict:
    return {"basis": [list(r) for r in L.basis], "offset": list(L.offset)}


def coset_from_dict(d: dict | None) -> LatticeCoset:
    if not d:
        return LatticeCoset.whole()
    (a, z), (b, c) = d["basis"]
    if z != 0:
        raise ConfigError("coset basis must be lower triangular [[a, 0], [b, c]]")
    x0, y0 = d.get("offset", (0, 0))
    try:
        return LatticeCoset(int(a), int(b), int(c), int(x0), int(y0))
    except ValueError as e:
        raise ConfigError(str(e)) from None


@dataclass(frozen=True)
class ExperimentConfig:
    form: FormSpec
    grid: tuple[int, ...]
    region: RegionSpec = RegionSpec()
    coset: LatticeCoset = LatticeCoset.whole()
    table_limit: int | None = None
    threads: int | None = None  # None: use the available parallelism
    name: str = ""

    def __post_init__(self):
        grid = tuple(int(n) for n in self.grid)
        if not grid or any(n < 2 for n in grid):
            raise ConfigError("grid must be a nonempty list of N >= 2")
        object.__setattr__(self, "grid", grid)
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.table_limit is not None and self.table_limit < 1:
            raise ConfigError("table_limit must be positive")

    def required_limit(self) -> int:
        return max(self.form.required_limit(self.region.at(N)) for N in self.grid)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "form": form_to_dict(self.form),
            "region": self.region.to_dict(),
            "coset": coset_to_dict(self.coset),
            "grid": list(self.grid),
            "table_limit": self.table_limit,
            "threads": self.threads,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        unknown = set(d) - {"name", "form", "region", "coset", "grid", "table_limit", "threads"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "form" not in d or "grid" not in d:
            raise ConfigError("config needs 'form' and 'grid'")
        try:
            return cls(
                form=form_from_dict(d["form"]),
                grid=tuple(d["grid"]),
                region=RegionSpec.from_dict(d.get("region", {})),
                coset=coset_from_dict(d.get("coset")),
                table_limit=d.get("table_limit"),
                threads=None if d.get("threads") is None else int(d["threads"]),
                name=d.get("name", ""),
            )
        except ConfigError:
            raise
        except (ValueError, TypeError) as e:
            raise ConfigError(str(e)) from None

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            try:
                return cls.from_dict(json.load(fh))
            except json.JSONDecodeError as e:
                raise ConfigError(f"{path}: {e}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def environment_fingerprint() -> dict:
    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "machine": platform.machine(),
        "system": platform.system(),
    }


FIELDS = ("form", "N", "raw", "count", "normalizer", "avg", "envelope_ratio")


@dataclass
class ExperimentReport:
    form: FormSpec
    rows: list[ReportRow]
    environment: dict = field(default_factory=environment_fingerprint)

    def records(self) -> list[dict]:
        out = []
        for r in sorted(self.rows, key=lambda r: r.N):
            out.append(
                {
                    "form": self.form.describe(),
                    "N": r.N,
                    "raw": r.raw,
                    "count": r.count,
                    "normalizer": _frac_str(r.normalizer),
                    "avg": r.avg,
                    "envelope_ratio": abs(r.avg) / envelope(r.N, self.form.envelope_kind),
                }
            )
        return out

    def constant(self) -> float:
        """Largest |avg| / envelope over the grid."""
        return max((rec["envelope_ratio"] for rec in self.records()), default=0.0)

    def to_json(self) -> str:
        doc = {
            "form": form_to_dict(self.form),
            "environment": self.environment,
            "rows": self.records(),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        doc = json.loads(text)
        form = form_from_dict(doc["form"])
        rows = [
            ReportRow(form, rec["N"], rec["raw"], rec["count"], Fraction(rec["normalizer"]))
            for rec in doc["rows"]
        ]
        return cls(form, rows, doc["environment"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        w.writeheader()
        for rec in self.records():
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in rec.items()})
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, form: FormSpec) -> "ExperimentReport":
        rows = [
            ReportRow(form, int(r["N"]), int(r["raw"]), int(r["count"]), Fraction(r["normalizer"]))
            for r in csv.DictReader(io.StringIO(text))
        ]
        return cls(form, rows)

    def timing_json(self) -> str:
        ms = {str(r.N): round(r.millis, 3) for r in sorted(self.rows, key=lambda r: r.N)}
        return json.dumps({"millis": ms}, indent=2, sort_keys=True) + "\n"


def atomic_write(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
