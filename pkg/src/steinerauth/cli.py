"""Command line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad invocation or parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import authcode, designs, ordering, tables

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _stats_dict(d: designs.Design, stats: designs.DesignStats) -> dict:
    return {
        "t": d.t,
        "v": d.v,
        "k": d.k,
        "lambda": d.lam,
        "b": stats.b,
        "r": stats.r,
        "lambda_s": list(stats.lambdas),
        "trivial": stats.trivial,
        "v_divides_b": stats.b % d.v == 0,
    }


def _print_stats(d, stats, as_json, out=None):
    out = out or sys.stdout
    info = _stats_dict(d, stats)
    if as_json:
        print(json.dumps(info), file=out)
        return
    print(f"{d}", file=out)
    print(f"  r = {stats.r}, lambda_s = {list(stats.lambdas)}", file=out)
    print(f"  v divides b: {info['v_divides_b']}", file=out)
    if stats.trivial:
        print("  note: trivial design (t < k < v fails)", file=out)


def cmd_generate(args) -> int:
    fam = args.family
    if fam == "pg":
        d = designs.pg_lines(args.d, args.q)
    elif fam == "spherical":
        d = designs.spherical_design(args.q, args.d)
    elif fam == "sts":
        if args.v is None:
            raise ValueError("sts needs --v")
        d = designs.sts_cyclic(args.v)
    else:
        full, derived = designs.witt_search()
        d = derived if args.derived else full
    stats = designs.verify_design(d)
    if args.out:
        designs.emit(d, args.out)
        _print_stats(d, stats, args.json)
    else:
        # keep stdout a clean design file
        _print_stats(d, stats, args.json, out=sys.stderr)
        print(json.dumps(designs.to_json(d)))
    return EXIT_OK


def cmd_order(args) -> int:
    d = designs.ingest(args.design)
    m = ordering.order_blocks(d)
    report = ordering.validate_ordering(d, m)
    if not report:
        for line in report.violations:
            print(line, file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        ordering.write_matrix(m, args.out)
        print(f"wrote {m.b}x{m.k} encoding matrix to {args.out}")
    else:
        sys.stdout.write(ordering.matrix_to_csv(m))
    return EXIT_OK


def cmd_verify(args) -> int:
    m = ordering.read_matrix(args.matrix)
    code = authcode.build_code(m)
    order = args.spoof_order
    if not 0 <= order < code.k:
        raise ValueError(f"--spoof-order must lie in 0..{code.k - 1}")
    report = authcode.security_report(code, order, cost_limit=args.cost_limit)
    if args.json:
        print(json.dumps({"b": code.b, "k": code.k, "v": code.v, **report.to_json(), "passed": report.passed}))
    else:
        print(f"code: b={code.b} rules, k={code.k} source states, v={code.v} messages")
        for i, (p, f) in enumerate(zip(report.deception, report.massey_floor)):
            mark = "=" if p == f else ">"
            print(f"  P_d{i} = {p}  ({mark} bound {f})")
        print(f"  {order}-fold secure: {report.tfold_secure}")
        print(f"  perfect secrecy: {'pass' if report.secrecy_ok else 'FAIL'}")
        print(f"  optimal (b = {report.bound}): {report.optimal}")
        for note in report.notes:
            print(f"  note: {note}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_table(args) -> int:
    if args.family:
        rows = tables.family_rows(args.family, args.min, args.max, args.d_max)
    else:
        rows = tables.table_three()
    ok = all(r.v_divides_b and r.matches_print is not False for r in rows)
    if args.json:
        print(json.dumps([r.as_dict() for r in rows]))
    else:
        print(f"{'t':>2} {'k':>3} {'v':>5} {'b':>14}  v|b   family      reference")
        for r in rows:
            flag = "yes" if r.v_divides_b else "no "
            check = "" if r.matches_print in (None, True) else f"  (printed {r.printed_b})"
            print(f"{r.t:>2} {r.k:>3} {r.v:>5} {r.b:>14}  {flag}  {r.family:<11} {r.reference}{check}")
    if args.family:
        return EXIT_OK
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fixtures(args) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, m in (("table1", tables.TABLE_I), ("table2", tables.TABLE_II)):
        ordering.write_matrix(m, out / f"{name}.json")
        ordering.write_matrix(m, out / f"{name}.csv")
    fano = designs.Design(2, 7, 3, 1, tuple(tuple(x - 1 for x in B) for B in tables.FANO_BLOCKS))
    designs.emit(fano, out / "fano.json")
    designs.emit(designs.Design(3, 10, 4, 1, tables.TABLE_II.rows), out / "table2_design.json")
    print(f"wrote fixtures to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinerauth",
        description="Optimal authentication codes with perfect secrecy from Steiner designs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="construct a design and write it as JSON")
    g.add_argument("family", choices=["pg", "spherical", "sts", "witt"])
    g.add_argument("--q", type=int, default=2, help="prime power (pg, spherical)")
    g.add_argument("--d", type=int, default=2, help="dimension / extension degree")
    g.add_argument("--v", type=int, help="number of points (sts)")
    g.add_argument("--derived", action="store_true", help="witt: emit the derived 4-(11,5,1)")
    g.add_argument("-o", "--out", help="output design file (default: stdout)")
    g.add_argument("--json", action="store_true", help="print stats as JSON")
    g.set_defaults(func=cmd_generate)

    o = sub.add_parser("order", help="order a design's blocks into an encoding matrix")
    o.add_argument("design")
    o.add_argument("-o", "--out", help="matrix file, .csv or .json (default: CSV on stdout)")
    o.set_defaults(func=cmd_order)

    v = sub.add_parser("verify", help="exact security report for an encoding matrix")
    v.add_argument("matrix", help="matrix file (.csv or .json)")
    v.add_argument("--spoof-order", type=int, default=1, help="highest spoofing order to check")
    v.add_argument("--cost-limit", type=int, default=authcode.DEFAULT_COST_LIMIT)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="parameter tables")
    sel = t.add_mutually_exclusive_group()
    sel.add_argument("--paper-table-3", action="store_true", help="recompute the published table (default)")
    sel.add_argument("--family", choices=["pg", "spherical", "sts"])
    t.add_argument("--min", type=int, default=2, help="lower end of q (or v for sts)")
    t.add_argument("--max", type=int, default=9, help="upper end of q (or v for sts)")
    t.add_argument("--d-max", type=int, default=4, help="largest even d for pg/spherical")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table)

    f = sub.add_parser("fixtures", help="write the published encoding matrices")
    f.add_argument("out_dir")
    f.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
