"""Command-line entry point: ``congruent-triangles <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import errors
from .arith import as_rational
from .catalog import Catalog, export_csv, summary_line
from .config import Config, load_config
from .curve import CongruentCurve, add, double, multiply
from .oracle import brute_force_system, cross_check
from .paper import verify_paper
from .seeds import SEED_X, seed_point
from .solutions import iter_pairs, make_pair
from .systems import SystemTag, construct, record_from_unknowns, verify_record

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3

# failures that mean "this input has no construction", not "bad input"
INFEASIBLE = (
    errors.IncompatibleSquarefreeParts,
    errors.DegenerateOutput,
    errors.FactorizationLimitExceeded,
    errors.InsufficientPairs,
)
# per-pair failures that --auto steps over
SKIPPABLE = INFEASIBLE[:3]

SYSTEM_CHOICES = [t.value for t in SystemTag]

# options whose values may legitimately start with "-" (e.g. --p -4,6)
_VALUE_OPTIONS = {"--p", "--q", "--x", "--z", "--k"}
_NEGATIVE_VALUE = re.compile(r"^-\d")


class UsageError(Exception):
    pass


def _join_negative_values(argv):
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _VALUE_OPTIONS and i + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[i + 1]):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def _emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")


def _error(args, exc, code):
    name = type(exc).__name__
    if getattr(args, "json", False):
        sys.stderr.write(json.dumps({"error": name, "message": str(exc), "exit": code}) + "\n")
    else:
        sys.stderr.write(f"error: {name}: {exc}\n")
    return code


def _parse_point(curve: CongruentCurve, text: str):
    if text.strip().upper() == "O":
        return curve.identity()
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"point must be 'x,y' or 'O', got {text!r}")
    return curve.point(as_rational(parts[0].strip()), as_rational(parts[1].strip()))


def _systems(value: str) -> list[SystemTag]:
    return list(SystemTag) if value == "all" else [SystemTag(value)]


def _catalog(args, config: Config) -> Catalog:
    return Catalog(args.catalog or config.catalog)


def cmd_verify_paper(args, config):
    table = None
    if args.table:
        with open(args.table, encoding="utf-8") as fh:
            table = json.load(fh)
    results = verify_paper(table)
    if args.json:
        _emit([r.to_json() for r in results])
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _auto_records(args, config):
    ns = [args.n] if args.n is not None else sorted(SEED_X)
    tags = _systems(args.system)
    out, skipped = [], 0
    for n in ns:
        curve = CongruentCurve(n)
        for pair in iter_pairs(curve, seed_point(n), config.multiple_bound):
            for tag in tags:
                try:
                    rec = construct(tag, pair, budget=config.factor_budget)
                except SKIPPABLE:
                    skipped += 1
                    continue
                out.append(rec)
                if len(out) == args.count:
                    return out, skipped
    raise errors.InsufficientPairs(
        f"only {len(out)} of {args.count} records within {config.multiple_bound} multiples "
        f"({skipped} infeasible constructions skipped)"
    )


def cmd_generate(args, config):
    if args.auto:
        if args.count < 1:
            raise UsageError("--count must be positive")
        if args.k is not None or args.x is not None or args.z is not None:
            raise UsageError("--auto takes seeds from the built-in table; drop --x, --z and --k")
        if args.n is not None and args.n not in SEED_X:
            raise UsageError(f"no seed point for N = {args.n}; known: {sorted(SEED_X)}")
        records, skipped = _auto_records(args, config)
        if skipped:
            sys.stderr.write(f"skipped {skipped} infeasible constructions\n")
    else:
        if args.system == "all":
            raise UsageError("--system all needs --auto")
        if args.n is None or args.x is None or args.z is None:
            raise UsageError("generate needs --n, --x and --z (or --auto)")
        pair = make_pair(CongruentCurve(args.n), as_rational(args.x), as_rational(args.z))
        k = as_rational(args.k) if args.k is not None else None
        records = [construct(SystemTag(args.system), pair, k, budget=config.factor_budget)]
    for rec in records:
        if not verify_record(rec):
            raise errors.VerificationFailed(f"constructed record failed verification: {rec.to_json()}")
        _emit(rec.to_json())
    if args.save:
        _catalog(args, config).append(records)
    return EXIT_OK


def cmd_point(args, config):
    curve = CongruentCurve(args.n)
    p = _parse_point(curve, args.p)
    if args.action == "double":
        result = double(p)
    elif args.action == "add":
        if args.q is None:
            raise UsageError("point add needs --q")
        q = _parse_point(CongruentCurve(args.n_q if args.n_q is not None else args.n), args.q)
        result = add(p, q)
    else:
        if args.k is None:
            raise UsageError("point multiply needs --k")
        try:
            k = int(args.k)
        except ValueError:
            raise UsageError(f"--k must be an integer, got {args.k!r}") from None
        result = multiply(k, p)
    if args.json:
        _emit(result.to_json())
    else:
        print(result)
    return EXIT_OK


def cmd_search(args, config):
    bound_pq = args.pq if args.pq is not None else config.oracle_pq
    bound_side = args.side if args.side is not None else config.oracle_side
    if bound_pq < 1 or bound_side < 1:
        raise UsageError("bounds must be positive")
    reports = {tag: brute_force_system(tag, bound_pq, bound_side) for tag in _systems(args.system)}
    status = EXIT_OK
    if args.json:
        payload = {"reports": [r.to_json() for r in reports.values()]}
    else:
        for tag, rep in reports.items():
            symbols = ",".join(tag.symbols)
            print(f"{tag.value}: {len(rep.hits)} primitive hit(s), {len(rep.raw)} raw, "
                  f"pq <= {bound_pq}, side <= {bound_side}, {rep.elapsed:.3f}s")
            for h in rep.hits:
                print(f"  ({symbols}) = ({', '.join(map(str, h))})")
    if args.cross_check:
        records = [r for r in Catalog(args.cross_check).records() if r.tag in reports]
        check = cross_check(records, bound_pq, bound_side, reports)
        if args.json:
            payload["cross_check"] = check.to_json()
        else:
            print(f"cross-check: {len(check.matched)} matched, {len(check.misses)} missed, "
                  f"{len(check.out_of_range)} out of range")
            for rec in check.misses:
                print(f"  MISS {rec.tag.value} N={rec.n} {rec.values()}")
        if not check.consistent:
            status = EXIT_FAIL
    if args.save:
        saved = []
        for tag, rep in reports.items():
            for hit in rep.raw:
                rec = record_from_unknowns(tag, dict(zip(tag.symbols, hit)))
                if rec is not None:
                    saved.append(rec)
        _catalog(args, config).append(saved)
        if not args.json:
            print(f"saved {len(saved)} record(s)")
        else:
            payload["saved"] = len(saved)
    if args.json:
        _emit(payload)
    return status


def cmd_catalog(args, config):
    catalog = _catalog(args, config)
    if args.action == "list":
        entries = catalog.read()
        if args.json:
            _emit([e.to_json() for e in entries])
        else:
            print(f"{len(entries)} entries")
            for i, e in enumerate(entries, 1):
                print(summary_line(i, e))
        return EXIT_OK
    if args.action == "export":
        text = export_csv(catalog.read())
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return EXIT_OK
    results = catalog.verify()
    failed = [(i, e) for i, e, ok in results if not ok]
    if args.json:
        _emit({"entries": len(results), "failed": [i for i, _ in failed]})
    else:
        for i, e in failed:
            print(f"FAIL {summary_line(i, e)}")
        print(f"{len(results) - len(failed)}/{len(results)} entries verified")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--config", default=argparse.SUPPRESS, metavar="PATH", help="JSON config file")
    common.add_argument("--catalog", default=argparse.SUPPRESS, metavar="PATH", help="catalog file (JSON lines)")

    parser = argparse.ArgumentParser(
        prog="congruent-triangles",
        description="Right-triangle pairs with sides p^2 +- q^2 from congruent number curves.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    vp = sub.add_parser("verify-paper", parents=[common], help="recompute the published examples")
    vp.add_argument("--table", metavar="PATH", help="JSON file replacing the built-in example table")
    vp.set_defaults(func=cmd_verify_paper)

    gen = sub.add_parser("generate", parents=[common], help="construct solution records")
    gen.add_argument("--system", choices=SYSTEM_CHOICES + ["all"], default="all")
    gen.add_argument("--n", type=int)
    gen.add_argument("--x")
    gen.add_argument("--z")
    gen.add_argument("--k", help="scale factor (default: the minimal one)")
    gen.add_argument("--auto", action="store_true", help="draw pairs from the built-in seed points")
    gen.add_argument("--count", type=int, default=10)
    gen.add_argument("--save", action="store_true", help="append the records to the catalog")
    gen.set_defaults(func=cmd_generate)

    pt = sub.add_parser("point", parents=[common], help="group-law arithmetic")
    pt.add_argument("action", choices=["double", "add", "multiply"])
    pt.add_argument("--n", type=int, required=True)
    pt.add_argument("--p", required=True, help="'x,y' or 'O'")
    pt.add_argument("--q", help="second point for add")
    pt.add_argument("--n-q", type=int, dest="n_q", help="curve of --q (defaults to --n)")
    pt.add_argument("--k", help="multiplier")
    pt.set_defaults(func=cmd_point)

    se = sub.add_parser("search", parents=[common], help="brute-force oracle")
    se.add_argument("--system", choices=SYSTEM_CHOICES + ["all"], default="all")
    se.add_argument("--pq", type=int, help="bound on p, q (and r, s)")
    se.add_argument("--side", type=int, help="bound on the free side")
    se.add_argument("--save", action="store_true", help="append hits to the catalog")
    se.add_argument("--cross-check", dest="cross_check", metavar="CATALOG",
                    help="check that every in-bounds catalog record is among the hits")
    se.set_defaults(func=cmd_search)

    ca = sub.add_parser("catalog", parents=[common], help="inspect the catalog")
    ca.add_argument("action", choices=["list", "export", "verify"])
    ca.add_argument("--output", help="export target (default stdout)")
    ca.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    for name, default in (("json", False), ("config", None), ("catalog", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        config = load_config(args.config)
    except (OSError, ValueError, TypeError) as exc:
        return _error(args, exc, EXIT_USAGE)
    try:
        return args.func(args, config)
    except INFEASIBLE as exc:
        return _error(args, exc, EXIT_INFEASIBLE)
    except (errors.CorruptCatalog, errors.VerificationFailed) as exc:
        return _error(args, exc, EXIT_FAIL)
    except (UsageError, errors.CongruentError, ValueError, OSError) as exc:
        return _error(args, exc, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
