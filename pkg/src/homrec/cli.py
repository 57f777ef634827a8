"""Command-line front end.

Exit codes: 0 found / true, 1 infeasible / false, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional, Sequence

from . import __version__
from .counting import BUDGET_ENV, HOM, MODES, Budget, PatternConstraint, check_constraints, count
from .degseq import format_sequence, havel_hakimi_realize, is_graphic, parse_sequence
from .errors import HomRecError, InternalInconsistency, NotGraphic
from .graph import Graph, degree_sequence, parse_graph, serialize_graph
from .oracle import brute_search, isomorphism_classes, read_manifest, satisfying_graphs, write_manifest
from .reductions import (circuit_to_constraints, coloring_to_constraints, colors_to_four,
                         parse_circuit, satisfying_input, two_round_three_colouring, verify_reduction)
from .solver import SolveStats, parse_star_constraints, solve_stars

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def _budget(args) -> Budget:
    return Budget(getattr(args, "budget", None))


def _counts_table(g: Graph, constraints: Sequence[PatternConstraint]):
    report = check_constraints(g, constraints, Budget(float("inf")))
    return [
        {"pattern": serialize_graph(r.constraint.pattern), "mode": r.constraint.mode,
         "required": r.constraint.required_count, "actual": r.actual}
        for r in report.rows
    ], report.satisfied


def _emit(args, lines: List[str], payload: dict, started: float):
    if args.json:
        if args.timing:
            payload["seconds"] = round(time.perf_counter() - started, 6)
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_solve_stars(args) -> int:
    started = time.perf_counter()
    try:
        instance = parse_star_constraints(_read(args.constraints))
    except HomRecError as exc:
        raise CliError(f"{args.constraints}: {exc}") from None
    stats = SolveStats()
    g = solve_stars(instance, stats)
    payload = {"command": "solve-stars", "mode": instance.mode,
               "targets": list(instance.counts.slots),
               "dp": {"calls": stats.dp_calls, "states": stats.states,
                      "hit_rate": round(stats.hit_rate, 6),
                      "completions_tried": stats.completions_tried}}
    if g is None:
        payload["verdict"] = "infeasible"
        _emit(args, ["INFEASIBLE"], payload, started)
        return EXIT_NO
    lines = ["FEASIBLE"]
    seq = degree_sequence(g)
    if args.emit_degseq:
        lines.append("degseq " + format_sequence(seq))
    text = serialize_graph(g)
    if args.emit_graph:
        _write(args.emit_graph, text)
    else:
        lines.append(text.rstrip("\n"))
    table, _ = _counts_table(g, instance.constraints())
    payload.update(verdict="feasible", graph=text, degree_sequence=list(seq), counts=table)
    _emit(args, lines, payload, started)
    return EXIT_OK


def cmd_brute(args) -> int:
    started = time.perf_counter()
    try:
        constraints = read_manifest(args.manifest)
    except OSError as exc:
        raise CliError(f"cannot read manifest in {args.manifest}: {exc.strerror}") from None
    budget = _budget(args)
    result = brute_search(constraints, args.max_n, budget)
    payload = {"command": "brute", "bound": result.bound, "searched_up_to": result.searched_up_to,
               "nodes": result.stats.nodes}
    if result.witness is None:
        line = f"INFEASIBLE (exhausted n <= {result.searched_up_to})"
        payload["verdict"] = "infeasible"
        _emit(args, [line], payload, started)
        return EXIT_NO
    g = result.witness
    text = serialize_graph(g)
    lines = ["FEASIBLE"]
    if args.emit_graph:
        _write(args.emit_graph, text)
    else:
        lines.append(text.rstrip("\n"))
    table, _ = _counts_table(g, constraints)
    payload.update(verdict="feasible", graph=text, counts=table)
    if args.up_to_iso:
        classes = isomorphism_classes(satisfying_graphs(constraints, g.vertex_count, budget))
        lines.append(f"isomorphism classes on {g.vertex_count} vertices: {len(classes)}")
        payload["isomorphism_classes"] = len(classes)
    _emit(args, lines, payload, started)
    return EXIT_OK


def cmd_count(args) -> int:
    started = time.perf_counter()
    try:
        pattern = parse_graph(_read(args.pattern))
        target = parse_graph(_read(args.target))
    except HomRecError as exc:
        raise CliError(str(exc)) from None
    value = count(pattern, target, args.mode, _budget(args))
    _emit(args, [str(value)], {"command": "count", "mode": args.mode, "count": value}, started)
    return EXIT_OK


def cmd_check_degseq(args) -> int:
    started = time.perf_counter()
    seq = parse_sequence(args.seq)
    ok = is_graphic(seq)
    _emit(args, ["GRAPHIC" if ok else "NOT GRAPHIC"],
          {"command": "check-degseq", "sequence": list(seq), "graphic": ok}, started)
    return EXIT_OK if ok else EXIT_NO


def cmd_havel_hakimi(args) -> int:
    started = time.perf_counter()
    seq = parse_sequence(args.seq)
    try:
        g = havel_hakimi_realize(seq)
    except NotGraphic:
        _emit(args, ["NOT GRAPHIC"], {"command": "havel-hakimi", "sequence": list(seq),
                                      "graphic": False}, started)
        return EXIT_NO
    text = serialize_graph(g)
    _emit(args, [text.rstrip("\n")], {"command": "havel-hakimi", "sequence": list(seq),
                                       "graphic": True, "graph": text}, started)
    return EXIT_OK


def cmd_reduce(args) -> int:
    started = time.perf_counter()
    kind = args.kind
    if kind == "circuit":
        try:
            circuit = parse_circuit(_read(args.input))
        except HomRecError as exc:
            raise CliError(f"{args.input}: {exc}") from None
        cl = circuit_to_constraints(circuit)
        expected = lambda: satisfying_input(circuit) is not None
    elif kind == "coloring":
        try:
            f = parse_graph(_read(args.input))
        except HomRecError as exc:
            raise CliError(f"{args.input}: {exc}") from None
        cl = coloring_to_constraints(f)
        expected = lambda: two_round_three_colouring(f)
    else:
        try:
            source = read_manifest(args.input)
        except OSError as exc:
            raise CliError(f"cannot read manifest in {args.input}: {exc.strerror}") from None
        palette = args.palette.split(",") if args.palette else None
        cl = colors_to_four(source, palette)
        expected = lambda: brute_search(source, args.max_n, _budget(args)).feasible
    write_manifest(args.out, cl)
    lines = [f"wrote {len(cl)} constraints to {args.out}"]
    payload = {"command": "reduce", "kind": kind, "constraints": len(cl), "out": args.out}
    code = EXIT_OK
    if args.verify:
        report = verify_reduction(cl, expected(), args.max_n, _budget(args))
        word = "satisfiable" if report.actual else "unsatisfiable"
        lines.append(f"{'VERIFIED' if report.matches else 'MISMATCH'} {word} "
                     f"({report.result.certificate()})")
        payload["verify"] = {"expected": report.expected, "actual": report.actual,
                             "matches": report.matches}
        if report.matches is False:
            code = EXIT_NO
    _emit(args, lines, payload, started)
    return code


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homrec",
        description="Reconstruct graphs from homomorphism and subgraph counts.",
        epilog=f"The step budget defaults to 10^8 and can be set with {BUDGET_ENV}.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--timing", action="store_true", help="include wall time in --json output")
    budgeted = argparse.ArgumentParser(add_help=False)
    budgeted.add_argument("--budget", type=_positive_int, default=None,
                          help="step budget for counting and search")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-stars", parents=[common], help="reconstruct from star counts")
    p.add_argument("--constraints", required=True, help="star constraint file")
    p.add_argument("--emit-graph", metavar="OUT", help="write the witness graph here")
    p.add_argument("--emit-degseq", action="store_true", help="print the degree sequence")
    p.set_defaults(func=cmd_solve_stars)

    p = sub.add_parser("brute", parents=[common, budgeted], help="exhaustive search over small graphs")
    p.add_argument("--manifest", required=True, help="constraint manifest directory")
    p.add_argument("--max-n", type=_positive_int, default=None,
                   help="largest vertex count to try (default: the size bound)")
    p.add_argument("--up-to-iso", action="store_true",
                   help="also count satisfying graphs up to isomorphism")
    p.add_argument("--emit-graph", metavar="OUT", help="write the witness graph here")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("count", parents=[common, budgeted], help="count homs or copies of a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--mode", choices=MODES, default=HOM)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("check-degseq", parents=[common], help="test a degree sequence for graphicality")
    p.add_argument("--seq", required=True, help="comma-separated degrees, e.g. 3,3,2,2,0")
    p.set_defaults(func=cmd_check_degseq)

    p = sub.add_parser("havel-hakimi", parents=[common], help="realize a degree sequence")
    p.add_argument("--seq", required=True, help="comma-separated degrees")
    p.set_defaults(func=cmd_havel_hakimi)

    p = sub.add_parser("reduce", parents=[common, budgeted], help="compile a problem to constraints")
    p.add_argument("kind", choices=("circuit", "coloring", "colors4"))
    p.add_argument("--input", required=True,
                   help="circuit file, plain graph file, or manifest directory (colors4)")
    p.add_argument("--out", required=True, help="manifest directory to write")
    p.add_argument("--palette", help="colors4: comma-separated palette order")
    p.add_argument("--verify", action="store_true", help="check the result with the brute-force oracle")
    p.add_argument("--max-n", type=_positive_int, default=None, help="vertex limit for --verify")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, HomRecError, ValueError, InternalInconsistency, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
