"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error (bad files, inconsistent
inputs).  The default port for `serve` comes from CPCGRAPH_PORT.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis, builder, bundle, opgraph, translation
from .analysis import (
    build_lookup_decoder,
    distance,
    monte_carlo,
    syndrome_table_json,
    syndrome_table_text,
)
from .classical import load_code
from .stabilizer import pauli_strings

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

DEFAULT_PORT_ENV = "CPCGRAPH_PORT"


class UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageExit(message)


class DataError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise DataError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _load_code(spec: str):
    try:
        return load_code(spec)
    except FileNotFoundError:
        raise DataError(f"{spec}: no such file")
    except json.JSONDecodeError as exc:
        raise DataError(f"{spec}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    except (KeyError, ValueError) as exc:
        raise DataError(f"{spec}: {exc}")


def _load_bundle(path: str):
    try:
        return bundle.from_json(_load_json(path))
    except (KeyError, ValueError, TypeError) as exc:
        if isinstance(exc, DataError):
            raise
        raise DataError(f"{path}: not a valid bundle: {exc}")


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_build(args) -> int:
    bit = _load_code(args.bit)
    phase = _load_code(args.phase)
    try:
        session = builder.combine(bit, phase)
    except builder.IncompatibleCodesError as exc:
        raise DataError(str(exc))
    if args.cross:
        spec = _load_json(args.cross)
        pairs = spec["pairs"] if isinstance(spec, dict) else spec
        labels = session.graph.parity_qubits
        resolved = []
        for a, b in pairs:
            resolved.append(
                (labels[a] if isinstance(a, int) else a, labels[b] if isinstance(b, int) else b)
            )
        try:
            builder.apply_cross_checks(session, resolved)
        except (opgraph.EdgeRoleError, IndexError) as exc:
            raise DataError(f"{args.cross}: {exc}")
    name = args.name or f"{bit.name}+{phase.name}"
    b = bundle.build_bundle(session.graph, name, session.tags, args.claimed_distance)
    bundle.save(b, args.output)
    print(f"wrote {args.output}: n={b.n} k={b.k} m={b.graph.m}")
    return EXIT_OK


def cmd_annotate(args) -> int:
    g = opgraph.from_json(_load_json(args.graph))
    try:
        g = opgraph.annotate(g)
    except opgraph.GraphStateError as exc:
        raise DataError(str(exc))
    _write_or_print(opgraph.dumps(g), args.output)
    return EXIT_OK


def cmd_translate(args) -> int:
    obj = _load_json(args.input)
    g = opgraph.from_json(obj["graph"] if "graph" in obj else obj)
    if not g.annotated:
        g = opgraph.annotate(g)
    cfg = translation.translate(g)
    _write_or_print(translation.dumps(cfg), args.output)
    return EXIT_OK


def cmd_stabilizers(args) -> int:
    b = _load_bundle(args.bundle)
    if args.format == "json":
        _write_or_print(json.dumps(b.matrix.to_json(), indent=2), args.output)
    else:
        _write_or_print("\n".join(pauli_strings(b.matrix, b.labels)), args.output)
    return EXIT_OK


def cmd_syndromes(args) -> int:
    b = _load_bundle(args.bundle)
    if args.format == "json":
        _write_or_print(json.dumps(syndrome_table_json(b.table), indent=2), args.output)
    else:
        _write_or_print(syndrome_table_text(b.table, b.k, b.graph.parity_qubits, b.tags), args.output)
    return EXIT_OK


def cmd_distance(args) -> int:
    b = _load_bundle(args.bundle)
    d = distance(b.matrix, args.max_weight)
    print(d if d is not None else f">= {args.max_weight + 1}")
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    b = _load_bundle(args.bundle)
    decoder = build_lookup_decoder(b.matrix)
    rows = [analysis.MonteCarloResult.CSV_HEADER]
    for p in args.p:
        if not 0.0 <= p <= 1.0:
            raise DataError(f"p={p} outside [0, 1]")
        r = monte_carlo(b.matrix, decoder, p, args.shots, args.seed, workers=args.workers)
        rows.append(r.csv_row())
        print(f"p={r.p}: rate={r.rate:.3e} +- {r.stderr:.3e} ({r.failures}/{r.shots})")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(rows) + "\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_search(args) -> int:
    b = _load_bundle(args.bundle)
    session = builder.DesignSession(
        base_graph=opgraph.clear_annotation(b.graph),
        graph=b.graph if b.graph.annotated else opgraph.annotate(b.graph),
        tags=b.tags or analysis.PartitionTags(frozenset(), frozenset(b.graph.parity_qubits)),
        target_distance=args.target_d,
    )
    res = builder.search_cross_checks(session, args.target_d, budget=args.budget)
    report = {
        "success": res.success,
        "pairs": [list(p) for p in res.pairs],
        "distance": res.distance,
        "examined": res.examined,
        "message": res.message,
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK if res.success else EXIT_DATA


def cmd_export_dot(args) -> int:
    b = _load_bundle(args.bundle)
    if args.view == "factor":
        g = b.graph if b.graph.annotated else opgraph.annotate(b.graph)
        _write_or_print(translation.to_dot(translation.translate(g)), args.output)
    else:
        _write_or_print(opgraph.to_dot(b.graph), args.output)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve

    serve(port=args.port, snapshot=args.snapshot, seed=args.seed)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="cpcgraph", description=__doc__)
    parser.add_argument("--seed", type=int, default=0, help="seed for stochastic subcommands")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("build", help="combine two classical codes into a code bundle")
    p.add_argument("--bit", required=True, help="bit-flip code: JSON file or builtin:<name>")
    p.add_argument("--phase", required=True, help="phase-flip code: JSON file or builtin:<name>")
    p.add_argument("--cross", help="JSON file with cross-check pairs (labels or 0-based indices)")
    p.add_argument("--name")
    p.add_argument("--claimed-distance", type=int)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("annotate", help="annotate an operational graph JSON")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("translate", help="translate a graph or bundle to a classical factor graph")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("stabilizers", help="print stabilizers of a bundle")
    p.add_argument("bundle")
    p.add_argument("--format", choices=("pauli", "json"), default="pauli")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_stabilizers)

    p = sub.add_parser("syndromes", help="print the single-error syndrome table")
    p.add_argument("bundle")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_syndromes)

    p = sub.add_parser("distance", help="brute-force code distance")
    p.add_argument("bundle")
    p.add_argument("--max-weight", type=int, default=3)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("montecarlo", help="estimate logical failure rates")
    p.add_argument("bundle")
    p.add_argument("--p", type=float, action="append", required=True, help="repeatable")
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="overrides the global --seed")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("search", help="search cross-check sets for a target distance")
    p.add_argument("bundle")
    p.add_argument("--target-d", type=int, required=True)
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("export-dot", help="export Graphviz DOT")
    p.add_argument("bundle")
    p.add_argument("--view", choices=("operational", "factor"), default="operational")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("serve", help="run the HTTP design service")
    p.add_argument("--port", type=int, default=int(os.environ.get(DEFAULT_PORT_ENV, "8472")))
    p.add_argument("--snapshot", help="JSON file for session persistence")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageExit as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except builder.InconsistencyError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
