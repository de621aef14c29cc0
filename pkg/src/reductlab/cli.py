"""Command line interface.

    reductlab analyze table.dtab [--all-reducts N] [--format text|json]
    reductlab gen lines spec.lines --decisions distinct -o out.dtab
    reductlab gen polys spec.poly --decisions random:3 --seed 7
    reductlab gen cube 4
    reductlab gen shatter 3
    reductlab verify config.json -o report.json
    reductlab nc --family lines --n 6 --budget 5 --seed 0
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bounds, lines, polys
from .reducts import enumerate_reducts, min_reduct
from .shattering import shattering_dimension
from .tables import (
    BINARY,
    TableError,
    complete_table,
    make_decisions,
    parse_decision_mode,
    parse_table,
    serialize_table,
    table_to_json,
)


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _decisions(token: str, seed: int | None):
    if token.startswith("file:"):
        text = _read(token[len("file:"):])
        try:
            return [int(t) for t in text.split()]
        except ValueError:
            raise CliError(f"decision file {token[5:]} must hold integers") from None
    try:
        kind, arg = parse_decision_mode(token)
    except ValueError as e:
        raise CliError(str(e)) from None
    if kind == "random" and seed is None:
        raise CliError("--seed is required with random decisions")
    return kind, arg


def cmd_analyze(args) -> int:
    table = parse_table(_read(args.table))
    red = min_reduct(table)
    sh = shattering_dimension(table)
    names = [table.attributes[i] for i in red.reduct]
    wcols = [table.attributes[i] for i in sh.columns]
    result = {
        "N": table.N,
        "cl": table.cl,
        "dim": table.dim,
        "R": red.cardinality,
        "reduct": names,
        "I": sh.dimension,
        "witness_columns": wcols,
        "witness": [list(p) for p in sh.witness],
    }
    if args.all_reducts:
        en = enumerate_reducts(table, args.all_reducts)
        result["reducts"] = [[table.attributes[i] for i in r] for r in en.reducts]
        result["reducts_truncated"] = en.truncated

    if args.format == "json":
        _write(None, json.dumps(result, indent=2) + "\n")
        return 0
    out = [
        f"N={table.N} cl={table.cl} dim={table.dim} R={red.cardinality} I={sh.dimension}",
        "reduct=" + ",".join(names),
        "witness=" + ",".join(f"{c}:{{{a},{b}}}" for c, (a, b) in zip(wcols, sh.witness)),
    ]
    if args.all_reducts:
        for r in result["reducts"]:
            out.append("reduct_all=" + ",".join(r))
        out.append(f"reducts_count={len(result['reducts'])} truncated={str(en.truncated).lower()}")
    _write(None, "\n".join(out) + "\n")
    return 0


def cmd_gen(args) -> int:
    if args.family in ("lines", "polys"):
        if args.spec is None:
            raise CliError(f"gen {args.family} needs a spec file")
        text = _read(args.spec)
        if args.family == "lines":
            attrs = lines.parse_lines(text)
            cells = lines.enumerate_cells(attrs, args.cap or lines.DEFAULT_LINE_CAP)
            decisions = make_decisions(len(cells), _decisions(args.decisions, args.seed), args.seed)
            table = lines.build_line_table(attrs, decisions, cap=args.cap or lines.DEFAULT_LINE_CAP)
        else:
            attrs = polys.parse_polys(text)
            const = polys.constant_columns(attrs)
            if const:
                print(f"note: constant polynomials {', '.join(const)} give constant columns",
                      file=sys.stderr)
            vectors = polys.enumerate_sign_vectors(attrs)
            decisions = make_decisions(len(vectors), _decisions(args.decisions, args.seed), args.seed)
            table = polys.build_poly_table(attrs, decisions)
    else:
        try:
            size = int(args.spec)
        except (TypeError, ValueError):
            raise CliError(f"gen {args.family} needs an integer size, got {args.spec!r}") from None
        if args.family == "cube":
            cap = args.cap or bounds.THEOREM1C_CAP
            if not 1 <= size <= cap:
                raise CliError(f"cube size {size} outside 1..{cap}")
            n = 2 ** size
            table = complete_table(BINARY, size, make_decisions(n, _decisions(args.decisions, args.seed), args.seed))
        else:
            system = polys.shatter_system(size, args.cap or polys.SHATTER_CAP)
            vectors = polys.enumerate_sign_vectors(system)
            decisions = make_decisions(len(vectors), _decisions(args.decisions, args.seed), args.seed)
            table = polys.build_poly_table(system, decisions)

    if args.format == "json":
        _write(args.output, json.dumps(table_to_json(table), indent=2) + "\n")
    else:
        _write(args.output, serialize_table(table))
    return 0


def cmd_verify(args) -> int:
    try:
        config = json.loads(_read(args.config))
    except json.JSONDecodeError as e:
        raise CliError(f"{args.config}: invalid JSON: {e}") from None
    reports = bounds.run_suite(config, os.path.dirname(os.path.abspath(args.config)))
    payload = json.dumps([r.to_dict() for r in reports], indent=1) + "\n"
    if args.output:
        _write(args.output, payload)
    summary = bounds.summarize(reports)
    sys.stdout.write(summary)
    failed = bounds.failures(reports)
    for r in failed[:20]:
        print(f"FAIL check={r.check} instance={r.instance} lhs={r.lhs} rhs={r.rhs} {r.detail}",
              file=sys.stderr)
    return 1 if failed else 0


def cmd_nc(args) -> int:
    cls = bounds.FAMILY_CLASSES.get(args.family)
    if cls is None:
        raise CliError(f"unknown family {args.family!r}; choose from {sorted(bounds.FAMILY_CLASSES)}")
    rows = bounds.empirical_nc(cls, args.n, args.budget, args.seed)
    if args.format == "json":
        _write(None, json.dumps([r.__dict__ for r in rows], indent=2) + "\n")
        return 0
    for r in rows:
        extra = f" exact={r.exact}" if r.exact is not None else ""
        print(f"n={r.n} max_rows={r.max_rows}{extra}")
    return 0


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reductlab", description="Exact reduct analysis of decision tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="N, cl, dim, R(T) and I(T) of a .dtab table")
    p.add_argument("table")
    p.add_argument("--all-reducts", type=_positive_int, metavar="N", help="also list up to N reducts")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen", help="generate a table from a family")
    p.add_argument("family", choices=["lines", "polys", "cube", "shatter"])
    p.add_argument("spec", nargs="?", help="spec file (lines/polys) or size (cube/shatter)")
    p.add_argument("--decisions", default="distinct",
                   help="distinct | constant[:d] | random:c | file:path")
    p.add_argument("--seed", type=int)
    p.add_argument("--cap", type=_positive_int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run the bound checks of a suite config")
    p.add_argument("config")
    p.add_argument("-o", "--output", help="JSON report path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nc", help="empirical N_C(n) for a family")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--budget", type=_positive_int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_nc)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, TableError, lines.LineError, polys.PolyError, bounds.ConfigError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
