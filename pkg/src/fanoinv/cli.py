"""``fano`` command-line interface."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import __version__

EXIT_OK, EXIT_ERROR, EXIT_CHECK, EXIT_USAGE = 0, 1, 2, 64
GW_MAX_DEGREE = {"V5": 4, "V22": 3}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(q: Fraction | int | None) -> str | None:
    if q is None:
        return None
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def record(command: str, target: str | None, degree: Any, value: Any, passed: bool | None,
           seeds: Sequence[int] | None, start: float, **extra: Any) -> dict[str, Any]:
    rec = {
        "command": command,
        "target": target,
        "degree": degree,
        "value": value,
        "pass": passed,
        "seeds": list(seeds) if seeds is not None else None,
        "elapsed_ms": int(round((time.perf_counter() - start) * 1000)),
        "version": __version__,
    }
    rec.update(extra)
    return rec


def emit(records: list[dict[str, Any]], fmt_: str, table_lines: list[str]) -> None:
    if fmt_ == "json":
        for rec in records:
            print(json.dumps(rec, separators=(", ", ": ")))
    else:
        for line in table_lines:
            print(line)


def _target(name: str) -> str:
    key = name.upper()
    if key not in ("V5", "V22"):
        raise UsageError(f"unknown target {name!r} (expected v5 or v22)")
    return key


def _degrees(args: argparse.Namespace, lo: int, hi: int) -> list[int]:
    if args.degree is not None and args.max_degree is not None:
        raise UsageError("give --degree or --max-degree, not both")
    if args.degree is not None:
        degs = [args.degree]
    elif args.max_degree is not None:
        degs = list(range(1, args.max_degree + 1))
    else:
        raise UsageError("--degree or --max-degree is required")
    for d in degs:
        if not lo <= d <= hi:
            raise UsageError(f"degree {d} outside the supported range {lo}-{hi}")
    return degs


def _seeds(k: int) -> list[int]:
    if k < 1:
        raise UsageError("--seeds must be at least 1")
    return list(range(1, k + 1))


def _lifts(target: str, lift: str) -> list[str]:
    from .fixedloci import LIFTS
    from .localize import DEFAULT_LIFTS

    if lift == "auto":
        return list(DEFAULT_LIFTS[target])
    if lift not in LIFTS[target]:
        raise UsageError(f"lift {lift!r} is not available for {target} (choose from {sorted(LIFTS[target])})")
    return [lift]


def _gw_value(target: str, d: int, lifts: list[str], seeds: list[int], jobs: int) -> tuple[Fraction, int]:
    from .localize import twisted_gw

    values = {}
    count = 0
    for lift in lifts:
        run = twisted_gw(target, d, lift, seeds, jobs)
        values[lift] = run.value
        count = run.graphs
    if len(set(values.values())) != 1:
        raise ArithmeticError(f"insertion lifts disagree: { {k: fmt(v) for k, v in values.items()} }")
    return next(iter(values.values())), count


def cmd_gw(args: argparse.Namespace) -> int:
    target = _target(args.target)
    degs = _degrees(args, 1, GW_MAX_DEGREE[target])
    if max(degs) == 4 and not args.allow_long:
        raise UsageError("degree 4 runs take minutes to hours; pass --allow-long to confirm")
    seeds = _seeds(args.seeds)
    lifts = _lifts(target, args.lift)
    if args.dump_graphs:
        from .localize import TARGETS

        t = TARGETS[target]
        _dump(args.dump_graphs, t.r, t.n, degs, 1)
    records, lines = [], []
    for d in degs:
        start = time.perf_counter()
        value, count = _gw_value(target, d, lifts, seeds, args.jobs)
        records.append(record("gw", target, d, fmt(value), None, seeds, start, lifts=lifts, graphs=count))
        lines.append(f"gw  {target:<4} d={d}  {fmt(value):>14}   graphs={count}  lifts={','.join(lifts)}")
    emit(records, args.format, lines)
    return EXIT_OK


def cmd_dt(args: argparse.Namespace) -> int:
    from .dtcalc import INSERTIONS, dataset_text, dt_number

    if args.show_data:
        print(dataset_text())
        return EXIT_OK
    if args.target is None:
        raise UsageError("--target is required")
    target = _target(args.target)
    degs = _degrees(args, 1, 3)
    insertions = [args.insertion] if args.insertion else sorted(INSERTIONS)
    records, lines = [], []
    for d in degs:
        for ins in insertions:
            start = time.perf_counter()
            res = dt_number(target, d, ins)
            records.append(record("dt", target, d, fmt(res.dt4), None, None, start, insertion=ins, dt3=fmt(res.dt3)))
            lines.append(f"dt  {target:<4} d={d}  {ins:<8} DT3={fmt(res.dt3):>8}  DT4={fmt(res.dt4):>8}")
    emit(records, args.format, lines)
    return EXIT_OK


def cmd_meeting(args: argparse.Namespace) -> int:
    from .gvcheck import meeting

    target = _target(args.target)
    if args.pair:
        try:
            b1, b2 = (int(x) for x in args.pair.split(","))
        except ValueError:
            raise UsageError("--pair expects two comma-separated degrees") from None
        pairs = [(b1, b2)]
    else:
        hi = args.max_degree if args.max_degree is not None else (args.degree or 2)
        pairs = [(b1, b2) for b1 in range(1, hi + 1) for b2 in range(b1, hi + 1)]
    if any(max(p) > 3 for p in pairs):
        raise UsageError("meeting invariants need genus-0 data, available up to degree 3")
    records, lines = [], []
    for b1, b2 in pairs:
        start = time.perf_counter()
        value = meeting(target, b1, b2)
        records.append(record("meeting", target, [b1, b2], fmt(value), None, None, start))
        lines.append(f"m[{b1},{b2}]  {target:<4} {fmt(value):>10}")
    emit(records, args.format, lines)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    from .gvcheck import check_genus0, check_genus1

    target = _target(args.target)
    degs = _degrees(args, 1, 3)
    seeds = _seeds(args.seeds)
    lifts = _lifts(target, args.lift)
    which = ["genus0", "genus1"] if args.which == "all" else [args.which]
    records, lines = [], []
    ok = True
    for name in which:
        for d in degs:
            start = time.perf_counter()
            if name == "genus0":
                res = check_genus0(target, d, lambda t, dd: _gw_value(t, dd, lifts, seeds, args.jobs)[0])
                detail = f"GW={fmt(res.lhs)}  sum DT4/k^2={fmt(res.rhs)}"
            else:
                res = check_genus1(target, d)
                detail = f"n1={fmt(res.lhs)}"
            ok &= res.passed
            records.append(record("check", target, d, fmt(res.lhs), res.passed, seeds if name == "genus0" else None,
                                  start, check=name, expected=fmt(res.rhs)))
            lines.append(f"{'PASS' if res.passed else 'FAIL'}  {name}  {target} d={d}  {detail}")
    emit(records, args.format, lines)
    return EXIT_OK if ok else EXIT_CHECK


def _dump(path: str, r: int, n: int, degs: Sequence[int], k: int) -> int:
    from .graphs import enumerate_graphs

    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for d in degs:
            for g, aut in enumerate_graphs(r, n, d, k):
                fh.write(f"{g.serialize()}\t{aut.aut}\n")
                count += 1
    return count


def cmd_graphs(args: argparse.Namespace) -> int:
    from .graphs import count_graphs, enumerate_graphs

    try:
        r, n = (int(x) for x in args.grassmannian.split(","))
    except ValueError:
        raise UsageError("--grassmannian expects r,n") from None
    if not 0 < r < n:
        raise UsageError("need 0 < r < n")
    if args.markings not in (0, 1):
        raise UsageError("--markings must be 0 or 1")
    degs = _degrees(args, 1, 4)
    records, lines = [], []
    for d in degs:
        start = time.perf_counter()
        if args.dump_graphs:
            count = _dump(args.dump_graphs, r, n, [d], args.markings)
        elif args.count_only:
            count = count_graphs(r, n, d, args.markings)
        else:
            count = 0
            for g, aut in enumerate_graphs(r, n, d, args.markings):
                lines.append(f"{g.serialize()}  aut={aut.aut}  A={aut.a_gamma}")
                count += 1
        records.append(record("graphs", f"Gr({r},{n})", d, str(count), None, None, start, markings=args.markings))
        if args.count_only or args.dump_graphs:
            lines.append(str(count))
    emit(records, args.format, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fano", description="Exact GW/DT/GV invariants of V5 and V22.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, target_required: bool = True) -> None:
        p.add_argument("--target", required=target_required, help="v5 or v22")
        p.add_argument("--degree", type=int)
        p.add_argument("--max-degree", type=int)
        p.add_argument("--format", choices=("table", "json"), default="table")

    def gw_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--lift", default="auto", choices=("auto", "sigma1sq", "sigma11", "sigma2", "c2S"))
        p.add_argument("--seeds", type=int, default=2)
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("gw", help="twisted genus-0 GW invariant by localization")
    common(p)
    gw_opts(p)
    p.add_argument("--dump-graphs", metavar="PATH")
    p.add_argument("--allow-long", action="store_true", help="permit the degree-4 computation")
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("dt", help="DT3/DT4 and descendant invariants")
    common(p, target_required=False)
    p.add_argument("--insertion", choices=("tau0-h2", "tau1-h1"))
    p.add_argument("--show-data", action="store_true", help="print the embedded dataset")
    p.set_defaults(func=cmd_dt)

    p = sub.add_parser("meeting", help="meeting invariants")
    common(p)
    p.add_argument("--pair", help="b1,b2")
    p.set_defaults(func=cmd_meeting)

    p = sub.add_parser("check", help="genus-0 and genus-1 GV checks")
    p.add_argument("which", nargs="?", default="all", choices=("all", "genus0", "genus1"))
    common(p)
    gw_opts(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("graphs", help="enumerate decorated graphs")
    p.add_argument("--grassmannian", required=True, metavar="R,N")
    p.add_argument("--degree", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--markings", type=int, default=0)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--dump-graphs", metavar="PATH")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_graphs)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        print("fano: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fano: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        print(f"fano: computation failed: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
