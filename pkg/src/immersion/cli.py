"""Batch command-line front end.

Exit codes: 0 success / verified / found, 1 not found or invalid
certificate, 2 precondition violation or bad input, 3 internal invariant
broken (a diagnostic dump directory is written).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import certify, gen, oracle, solver
from .errors import (
    FormatError,
    ImmersionError,
    InternalInvariantBroken,
    OutOfRange,
    PreconditionViolated,
    ResourceExceeded,
    SearchFailed,
    UnknownFixture,
)
from .multidigraph import read_digraph, write_digraph
from .patterns import F, TT, build_pattern, tt_chain_width

EXIT_OK, EXIT_NOT_FOUND, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


def _write_dot(path, host, cert=None):
    if path:
        with open(path, "w") as fh:
            fh.write(certify.to_dot(host, cert))


def cmd_find(args) -> int:
    g = read_digraph(args.input)
    trace: list = []
    l = args.l
    try:
        if args.pattern == TT:
            if l is not None:
                print("note: --l is ignored for tt; using max(2, C(k,2))", file=sys.stderr)
            l = tt_chain_width(args.k)
            cert = solver.find_tt(g, args.k, force=args.force, trace=trace, jobs=args.jobs)
        else:
            if l is None:
                l = tt_chain_width(args.k)
            mode = solver.RELAXED if (args.relaxed or args.force) else solver.STRICT
            try:
                cert = solver.find_f(g, args.k, l, mode, trace=trace, jobs=args.jobs)
            except (PreconditionViolated, InternalInvariantBroken) as exc:
                if not args.force:
                    raise
                raise SearchFailed(f"forced search failed: {exc}") from exc
    except InternalInvariantBroken as exc:
        dump = args.dump or (args.cert + ".dump")
        files = solver.write_dump(exc, dump)
        print(f"internal invariant broken: {exc}", file=sys.stderr)
        print(f"diagnostic dump written to {dump}: {', '.join(files)}", file=sys.stderr)
        return EXIT_INTERNAL
    except SearchFailed as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    certify.write_certificate(cert, args.cert)
    _write_dot(args.dot, g, cert)
    print(f"n={g.n} m={g.m} pattern={args.pattern} K={args.k} l={l}")
    for event in trace:
        print(event)
    print(f"certificate written to {args.cert} ({cert.size()} host arcs)")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = read_digraph(args.input)
    try:
        cert = certify.read_certificate(args.cert, g)
    except FormatError as exc:
        print(f"invalid certificate: {exc}")
        return EXIT_NOT_FOUND
    violations = certify.verify(g, cert)
    _write_dot(args.dot, g, cert)
    if violations:
        for v in violations:
            print(v)
        return EXIT_NOT_FOUND
    print("ok")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = read_digraph(args.input)
    pattern = build_pattern(args.pattern, args.k, args.l if args.pattern == F else None)
    limits = oracle.SearchLimits(args.max_vertices, args.max_arcs, args.budget)
    try:
        cert = oracle.exhaustive_immersion(g, pattern, limits)
    except ResourceExceeded as exc:
        print(f"resource exceeded: {exc}")
        return EXIT_PRECONDITION
    if cert is None:
        print("not present")
        return EXIT_NOT_FOUND
    print("found " + " ".join(f"{p}->{h}" for p, h in sorted(cert.vertex_map.items())))
    if args.cert:
        certify.write_certificate(cert, args.cert)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.model == "regular":
        for name in ("n", "d", "seed"):
            if getattr(args, name) is None:
                raise OutOfRange(f"--{name} is required for the regular model")
        g = gen.gen_out_regular(args.n, args.d, args.seed)
        write_digraph(g, args.out)
        print(f"wrote {args.out}: n={g.n} m={g.m}")
        return EXIT_OK
    if not args.name:
        raise OutOfRange("--name is required for the fixture model")
    fx = gen.gen_reduction_fixture(args.name)
    os.makedirs(args.out, exist_ok=True)
    write_digraph(fx.graph, os.path.join(args.out, "digraph.txt"))
    certify.write_certificate(fx.inner, os.path.join(args.out, "inner.cert"))
    with open(os.path.join(args.out, "fixture.json"), "w") as fh:
        json.dump({"name": fx.name, "K": fx.K, "l": fx.l, "expected": fx.expected},
                  fh, indent=2, sort_keys=True)
    print(f"wrote fixture {fx.name} to {args.out}")
    return EXIT_OK


def cmd_stats(args) -> int:
    g = read_digraph(args.input)
    print(f"n={g.n}")
    print(f"m={g.m}")
    if g.n:
        print(f"min_outdegree={g.min_out_degree()}")
        print(f"max_outdegree={g.max_out_degree()}")
    print(f"max_multiplicity={g.max_multiplicity()}")
    print(f"simple={'yes' if g.is_simple() else 'no'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="immersion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find", help="search for an F(k,l) or TT_k immersion")
    p.add_argument("--pattern", choices=[TT, F], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--input", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--force", action="store_true", help="run even below the degree bound")
    p.add_argument("--relaxed", action="store_true",
                   help="allow up to c1(K,l) vertices below the bound (F patterns)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--dot", help="write a Graphviz file of host and certificate")
    p.add_argument("--dump", help="diagnostic dump directory (default: <cert>.dump)")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("verify", help="check a certificate against a digraph")
    p.add_argument("--input", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--dot")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive search on a small digraph")
    p.add_argument("--input", required=True)
    p.add_argument("--pattern", choices=[TT, F], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--cert")
    p.add_argument("--max-vertices", type=int, default=oracle.SearchLimits.max_host_vertices)
    p.add_argument("--max-arcs", type=int, default=oracle.SearchLimits.max_host_arcs)
    p.add_argument("--budget", type=int, default=oracle.SearchLimits.node_budget)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("--model", choices=["regular", "fixture"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--name", help=f"fixture name: {', '.join(gen.FIXTURES)}")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="print basic digraph statistics")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PreconditionViolated, OutOfRange, FormatError, UnknownFixture) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalInvariantBroken as exc:
        print(f"internal invariant broken: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ImmersionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
