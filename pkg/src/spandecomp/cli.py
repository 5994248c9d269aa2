"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 malformed input (including a
disconnected graph), 3 guard violation (instance too large for an exhaustive
oracle).  Every failure prints one line ``ERROR:<code>: message`` to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from .decomposer import SPREAD_MODES, InvariantError, decompose_with_certificate
from .io import (MalformedInput, NameTable, decomposition_from_dict, decomposition_to_dict, dump_json,
                 format_bag_list, format_edge_list, parse_bag_list, parse_edge_list, read_text, to_dot,
                 write_text)
from .pathdec import MAX_ORACLE_VERTICES, InstanceTooLarge, exact_pathwidth, optimal_path_decomposition
from .verification import fig1_names, gen_fig1, gen_random_pathdec, validate_suitable

OK, VALIDATION_FAILED, MALFORMED, GUARD = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(MALFORMED, f"{self.prog}: {message}")


def _load_graph(path):
    return parse_edge_list(read_text(path))


def cmd_decompose(args) -> int:
    g, names = _load_graph(args.graph)
    if args.pathdec is not None:
        p = parse_bag_list(read_text(args.pathdec), names)
    else:
        limit = min(args.max_n, MAX_ORACLE_VERTICES)
        if len(g.vertices) > limit:
            raise CliError(GUARD, f"{len(g.vertices)} vertices exceed the exact pathwidth guard of {limit}; "
                                  "supply --pathdec")
        p = optimal_path_decomposition(g)
    try:
        cert = decompose_with_certificate(g, p, spread=args.spread)
    except InvariantError as exc:
        raise CliError(VALIDATION_FAILED, f"internal invariant violated: {exc}") from None
    d = cert.decomposition
    write_text(args.out, dump_json(decomposition_to_dict(d, names, cert.meta())))
    if args.dot:
        write_text(args.dot, to_dot(d, names))
    report = validate_suitable(g, d)
    if not report.ok:
        raise CliError(VALIDATION_FAILED, f"output failed validation: {report.violations[0]}")
    print(f"width {d.width} (k={cert.k}, h={cert.height}, |S'|={cert.semigroup_size}, bound {cert.bound})")
    return OK


def cmd_validate(args) -> int:
    g, names = _load_graph(args.graph)
    try:
        obj = json.loads(read_text(args.decomp))
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{args.decomp}: invalid JSON ({exc})") from None
    d = decomposition_from_dict(obj, names)
    report = validate_suitable(g, d)
    if not report.ok:
        print(report)
        raise CliError(VALIDATION_FAILED, f"{len(report.violations)} violation(s), first: {report.violations[0]}")
    print(f"OK width {d.width}")
    return OK


def cmd_pathwidth(args) -> int:
    g, _ = _load_graph(args.graph)
    print(exact_pathwidth(g))
    return OK


def cmd_gen(args) -> int:
    if args.family == "fig1":
        g, p = gen_fig1(args.n)
        labels = fig1_names(args.n)
        names = NameTable.from_names(labels[i] for i in sorted(labels))
    else:
        g, p = gen_random_pathdec(args.k, args.bags, args.density, args.seed)
        names = NameTable.identity(g.vertices)
    write_text(args.out_graph, format_edge_list(g, names))
    write_text(args.out_pathdec, format_bag_list(p, names))
    return OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(quick=args.quick)
    failed = [r.number for r in results if not r.passed]
    if failed:
        raise CliError(VALIDATION_FAILED, f"acceptance criteria failed: {failed}")
    print("all acceptance criteria passed")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spandecomp", description="Spanning-tree-indexed tree decompositions from path decompositions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", help="decompose a connected graph")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--pathdec", help="bag-list file (computed exactly when omitted)")
    p.add_argument("--max-n", type=int, default=MAX_ORACLE_VERTICES,
                   help="largest graph for which a missing path decomposition is computed")
    p.add_argument("--out", required=True, help="output JSON")
    p.add_argument("--dot", help="optional DOT output")
    p.add_argument("--spread", choices=SPREAD_MODES, default="paths",
                   help="bag augmentation rule (default: paths)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("validate", help="check a decomposition JSON against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--decomp", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("pathwidth", help="exact pathwidth (small graphs)")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_pathwidth)

    p = sub.add_parser("gen", help="write instance files")
    gen = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    f = gen.add_parser("fig1", help="the two-path family")
    f.add_argument("--n", type=int, required=True)
    r = gen.add_parser("random", help="random graph with a path decomposition")
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--bags", type=int, required=True)
    r.add_argument("--density", type=float, required=True)
    r.add_argument("--seed", type=int, required=True)
    for q in (f, r):
        q.add_argument("--out-graph", required=True)
        q.add_argument("--out-pathdec", required=True)
        q.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--quick", action="store_true", help="smaller samples, no runtime budgets")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        code, message = exc.code, str(exc)
    except InstanceTooLarge as exc:
        code, message = GUARD, str(exc)
    except (MalformedInput, ValueError, OSError) as exc:
        code, message = MALFORMED, str(exc)
    print(f"ERROR:{code}: {' '.join(message.split())}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())
