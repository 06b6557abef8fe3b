"""Command-line entry point: ``chowlakit {experiment,verify,inspect}``.

Exit codes: 0 success, 1 property failure, 2 invalid input, 3 resource error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import arith, quadfield, sieve
from .arith import TableTooSmall
from .experiments import FormError, Tables, run_chowla
from .factor import FactorizationError
from .report import ConfigError, ExperimentConfig, ExperimentReport, atomic_write
from .verify import run_all

OUT_DIR_ENV = "CHOWLAKIT_OUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3


def _signed(v: int) -> str:
    return f"{v:+d}" if v else "0"


def _default_out(config_path: str, fmt: str) -> str:
    base = os.path.splitext(os.path.basename(config_path))[0]
    ext = "csv" if fmt == "csv" else "json"
    return os.path.join(os.environ.get(OUT_DIR_ENV, "."), f"{base}.report.{ext}")


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    threads = 1 if args.serial else (args.threads or cfg.threads or os.cpu_count() or 1)
    limit = args.table_limit or cfg.table_limit or cfg.required_limit()
    need = cfg.required_limit()
    if limit < need:
        raise TableTooSmall(f"table limit {limit} is below the required {need}", required=need)
    tables = Tables(arith.liouville_table(limit))
    rows = [run_chowla(cfg.form, cfg.region.at(N), cfg.coset, N, tables, threads) for N in cfg.grid]
    report = ExperimentReport(cfg.form, rows)
    out = args.out or _default_out(args.config, args.format)
    atomic_write(out, report.to_csv() if args.format == "csv" else report.to_json())
    atomic_write(out + ".timing.json", report.timing_json())
    print(f"wrote {out} ({len(rows)} rows, C = {report.constant():.6g})")
    return EXIT_OK


def cmd_verify(args) -> int:
    limit = args.table_limit or 100_000
    table = arith.liouville_table(limit)
    if args.inject_fault is not None:
        signs = table.signs.copy()
        signs[args.inject_fault] = -signs[args.inject_fault] or 1
        table = arith.LiouvilleTable(table.limit, signs, table.spf.copy())
    failures = run_all(limit, table, seed=args.seed)
    for f in failures:
        print(f"FAIL {f}")
    if failures:
        return EXIT_FAIL
    print("all properties hold")
    return EXIT_OK


def _inspect(entity: str, vals: list[int]) -> str:
    if entity == "liouville":
        (n,) = vals
        return _signed(arith.liouville(n))
    if entity == "liouville-rational":
        num, den = vals
        return _signed(arith.liouville_rational(num, den))
    if entity == "sq":
        (n,) = vals
        return "sq={} d={}".format(*arith.sq_and_d(n))
    if entity == "radical":
        (n,) = vals
        rad, mu = arith.radical_and_mobius(n)
        return f"rad={rad} mu={_signed(mu)}"
    if entity == "symbol":
        a, b = vals
        return _signed(arith.symbol_ab(a, b))
    if entity == "root-number":
        a, b = vals
        return _signed(arith.root_number(a, b))
    if entity == "form":
        a, b, c = vals
        fn = quadfield.form_to_norm(a, b, c)
        _, d_disc = arith.sq_and_d(fn.disc)
        a2 = fn.alpha2
        return (
            f"field={fn.field} alpha1={fn.alpha1.x} alpha2={a2.x}{a2.y:+d}w "
            f"index={fn.index} d_disc={d_disc}"
        )
    if entity == "sieve-support":
        y, *primes = vals
        W = sieve.rosser_upper(primes, y)
        return " ".join(f"{d}:{_signed(int(w))}" for d, w in sorted(W.weights.items()))
    if entity == "factor-prime":
        d, p = vals
        spl = quadfield.factor_prime(quadfield.QuadField(d), p)
        ideals = " ".join(f"<{q.ideal.a},{q.ideal.b}{q.ideal.c:+d}w>" for q in spl.primes)
        return f"{spl.kind} {ideals}"
    raise ValueError(f"unknown entity {entity!r}")


INSPECT_ENTITIES = (
    "liouville",
    "liouville-rational",
    "sq",
    "radical",
    "symbol",
    "root-number",
    "form",
    "sieve-support",
    "factor-prime",
)


def cmd_inspect(args) -> int:
    print(_inspect(args.entity, args.values))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chowlakit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("experiment", help="run a configured experiment and write a report")
    e.add_argument("--config", required=True)
    e.add_argument("--out", help=f"report path (default: ${OUT_DIR_ENV} or .)")
    e.add_argument("--format", choices=("csv", "structured"), default="structured")
    e.add_argument("--threads", type=int)
    e.add_argument("--table-limit", type=int)
    e.add_argument("--serial", action="store_true", help="force a single worker")
    e.set_defaults(func=cmd_experiment)

    v = sub.add_parser("verify", help="run the property suites")
    v.add_argument("--config", help="accepted for symmetry; scale comes from --table-limit")
    v.add_argument("--table-limit", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--threads", type=int)
    v.add_argument("--serial", action="store_true")
    v.add_argument("--inject-fault", type=int, metavar="N", help="flip lambda(N) in the table")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("inspect", help="evaluate one quantity")
    i.add_argument("entity", choices=INSPECT_ENTITIES)
    i.add_argument("values", nargs="+", type=int)
    i.set_defaults(func=cmd_inspect)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TableTooSmall, MemoryError, FactorizationError) as e:
        print(f"resource error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConfigError, FormError, ValueError, ZeroDivisionError, OSError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
