"""Command line front end.

Exit codes: 0 success, 2 invalid input, 3 numerical failure,
4 reproduced table deviates from its reference values.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .errors import PsletError, ValidationError
from .expansion import DEFAULT_TOL
from .workbench import (
    DEFAULT_ORDER,
    DEFAULT_PADE,
    POTENTIALS,
    RunSpec,
    record_rows,
    run_table,
    solve_record,
    state_label,
    table_csv_rows,
    table_json,
    to_csv,
)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_DEVIATION = 0, 2, 3, 4


def _pade_pair(text: str) -> tuple[int, int]:
    try:
        n, m = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,M, got {text!r}") from None
    if n < 0 or m < 0:
        raise argparse.ArgumentTypeError("Padé degrees must be non-negative")
    return n, m


def _values(text: str) -> list[float]:
    """``v1,v2,...`` or ``start:stop:count`` (inclusive, linear)."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            return [float(v) for v in np.linspace(float(start), float(stop), int(count))]
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse values {text!r}") from None


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--potential", choices=sorted(POTENTIALS), required=True)
    p.add_argument("--a", type=float, default=0.0, help="spike strength")
    p.add_argument("--b", type=float, default=0.0, help="spike exponent")
    p.add_argument("--c", type=float, default=0.0, help="Coulomb truncation radius")
    p.add_argument("--l", type=int, default=0, help="angular momentum")
    p.add_argument("--nr", type=int, default=0, help="radial quantum number (series needs 0)")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order K of the summed series")
    p.add_argument("--pade", type=_pade_pair, action="append", metavar="N,M", help="Padé pair, repeatable (default 3,3 and 3,4)")
    p.add_argument("--convention", choices=["half", "doubled"], default="half")
    p.add_argument("--oracle", action="store_true", help="also integrate the radial equation numerically")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="tolerance of the expansion-point root")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pslet", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="energy of one state")
    _add_model_args(solve)

    scan = sub.add_parser("scan", help="sweep one parameter")
    _add_model_args(scan)
    scan.add_argument("--over", choices=["a", "b", "c", "l"], required=True)
    scan.add_argument("--values", type=_values, required=True, help="v1,v2,... or start:stop:count")
    scan.add_argument("--jobs", type=int, default=1)

    table = sub.add_parser("table", help="reproduce a reference table and compare")
    table.add_argument("table_id", type=int, choices=[1, 2, 3, 4])
    table.add_argument("--format", choices=["json", "csv", "text"], default="text")
    table.add_argument("--no-oracle", action="store_true", help="skip numerical integration")
    table.add_argument("--allow-disputed", action="store_true", help="do not count disputed reference cells as deviations")
    table.add_argument("--jobs", type=int, default=1)
    return parser


def _spec(args, **override) -> RunSpec:
    fields = dict(
        potential=args.potential, a=args.a, b=args.b, c=args.c, l=args.l, n_r=args.nr,
        order=args.order, pade=tuple(args.pade or DEFAULT_PADE), convention=args.convention,
        oracle=args.oracle, tol=args.tol,
    )
    fields.update(override)
    if not fields["tol"] > 0:
        raise ValidationError("--tol must be positive")
    return RunSpec(**fields)


def _text_record(rec) -> str:
    i = rec.inputs
    lines = [
        f"{i['potential']}  a={i['a']:g} b={i['b']:g} c={i['c']:g}  state {state_label(i['l'], i['n_r'])}  ({i['convention']} scale)",
        f"  q0 = {rec.q0:.12g}   w = {rec.w:.12g}   lbar = {rec.lbar:.12g}",
        f"  E_P (K={i['order']}) = {rec.e_p:.10g}",
    ]
    for key, val in rec.pade.items():
        lines.append(f"  {key} = {val:.10g}" if val is not None else f"  {key} = degenerate")
    if rec.oracle is not None:
        lines.append(f"  numerical  = {rec.oracle:.10g}")
    return "\n".join(lines)


def _emit_records(records, fmt: str, pade_keys) -> str:
    if fmt == "json":
        if len(records) == 1:
            return records[0].to_json()
        return json.dumps([r.to_dict() for r in records], sort_keys=True, separators=(",", ":"))
    if fmt == "csv":
        return to_csv(record_rows(records, pade_keys)).rstrip("\n")
    return "\n".join(_text_record(r) for r in records)


def _solve_many(specs, jobs: int):
    if jobs > 1 and len(specs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(solve_record, specs))
    return [solve_record(s) for s in specs]


def _text_table(results) -> str:
    out = []
    for res in results:
        r = res.row
        head = f"T{r.table} row {r.row:2d} {r.state} a={r.a:g} b={r.b:g} c={r.c:g}"
        if res.error:
            out.append(f"{head}: ERROR {res.error}")
            continue
        cells = "  ".join(f"{c['column']}={c['ours']:.10g} ({c['status']}, dev {c['deviation']:.2g})" for c in res.checks)
        out.append(f"{head}: {cells}")
    return "\n".join(out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "solve":
            spec = _spec(args)
            print(_emit_records([solve_record(spec)], args.format, [f"E[{n},{m}]" for n, m in spec.pade]))
            return EXIT_OK
        if args.command == "scan":
            base = _spec(args)
            specs = [_spec(args, **{("l" if args.over == "l" else args.over): (int(v) if args.over == "l" else v)}) for v in args.values]
            records = _solve_many(specs, args.jobs)
            print(_emit_records(records, args.format, [f"E[{n},{m}]" for n, m in base.pade]))
            return EXIT_OK
        results = run_table(args.table_id, oracle=not args.no_oracle, jobs=args.jobs)
        if args.format == "json":
            print(table_json(results))
        elif args.format == "csv":
            print(to_csv(table_csv_rows(results)).rstrip("\n"))
        else:
            print(_text_table(results))
        bad = {"FAIL"} if args.allow_disputed else {"FAIL", "DISPUTED"}
        deviating = [res for res in results if res.error or any(c["status"] in bad for c in res.checks)]
        if deviating:
            for res in deviating:
                cols = [c["column"] for c in res.checks if c["status"] in bad]
                print(f"deviation: table {res.row.table} row {res.row.row} {res.error or cols} {res.row.note}", file=sys.stderr)
            return EXIT_DEVIATION
        return EXIT_OK
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PsletError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
