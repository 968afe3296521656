"""Command-line front end.

Exit codes: 0 success; 1 failed verification or violated algorithm contract
or precondition; 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .apps import (
    OrientedHypergraph,
    decompose_k_ec,
    format_pinching_script,
    parse_pinching_script,
    replay_pinching,
    steiner_rooted_orientation,
)
from .core import (
    ContractViolation,
    Hypergraph,
    InputError,
    PreconditionError,
    ReplayError,
    format_hypergraph,
    parse_hypergraph,
)
from .cover import cover_result_to_json, run_cover
from .flow import min_cut_constrained
from .generators import quadratic_surplus_instance, star_instance
from .oracles import RequirementFunction, RequirementOracle
from .splitoff import (
    complete_h_splitting_off,
    format_script,
    parse_script,
    script_to_G_star,
    verify_local_connectivity,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 2 on usage errors
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str) -> Hypergraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_hypergraph(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def cmd_mincut(args) -> int:
    h = _load(args.file)
    if args.source == args.sink:
        raise InputError("source and sink must differ")
    value, witness = min_cut_constrained(h, {args.source}, {args.sink})
    print(f"lambda={value}")
    print("cut: " + " ".join(h.sorted_labels(witness)))
    return EXIT_OK


def cmd_splitoff(args) -> int:
    g = _load(args.file)
    result = complete_h_splitting_off(g, args.vertex)
    sys.stdout.write(format_hypergraph(result.hypergraph))
    if args.script:
        with open(args.script, "w", encoding="utf-8") as fh:
            fh.write(format_script(g, result.script))
    if args.verify:
        ok, msgs, _ = verify_local_connectivity(g, result.hypergraph, args.vertex)
        for m in msgs:
            print(m)
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


def cmd_cover(args) -> int:
    h = _load(args.file)
    try:
        with open(args.req, "r", encoding="utf-8") as fh:
            req = RequirementFunction.parse(fh.read(), h.vertices)
    except OSError as exc:
        raise InputError(f"cannot read {args.req}: {exc}") from None
    oracle = RequirementOracle(Hypergraph(h.vertices), req)
    result = run_cover(h, oracle)
    sys.stdout.write(format_hypergraph(result.hypergraph))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(cover_result_to_json(h, result))
    return EXIT_OK


def cmd_decompose(args) -> int:
    h = _load(args.file)
    script = decompose_k_ec(h, args.k)
    sys.stdout.write(format_pinching_script(h, script))
    return EXIT_OK


def cmd_orient(args) -> int:
    g = _load(args.file)
    terminals = args.terminals.split(",") if args.terminals else list(g.vertices)
    oh = steiner_rooted_orientation(g, terminals, args.root, args.k)
    sys.stdout.write(oh.format())
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.what == "splitoff":
        g = _load(args.file)
        gstar = _load(args.result)
        ok, msgs, _ = verify_local_connectivity(g, gstar, args.vertex)
        if args.script:
            with open(args.script, "r", encoding="utf-8") as fh:
                script = parse_script(fh.read())
            replayed = script_to_G_star(g, script)
            if replayed == gstar:
                msgs.append("script replay: ok")
            else:
                ok = False
                msgs.append("script replay does not reproduce the result")
        for m in msgs:
            print(m)
        return EXIT_OK if ok else EXIT_FAIL
    if args.what == "orientation":
        g = _load(args.file)
        with open(args.result, "r", encoding="utf-8") as fh:
            oh = OrientedHypergraph.parse(fh.read())
        if oh.underlying() != g:
            print("orientation does not match the hypergraph")
            return EXIT_FAIL
        terminals = args.terminals.split(",") if args.terminals else list(g.vertices)
        bad = [
            t
            for t in terminals
            if t != args.root and oh.paths_value(t, args.root) < args.k
        ]
        if bad:
            print(f"verification failed: fewer than {args.k} paths from {bad[0]}")
            return EXIT_FAIL
        print("verified: ok")
        return EXIT_OK
    # pinching
    h = _load(args.file)
    with open(args.result, "r", encoding="utf-8") as fh:
        script = parse_pinching_script(fh.read())
    try:
        rebuilt = replay_pinching(script, assert_k_ec=True)
    except ReplayError as exc:
        print(f"replay failed: {exc}")
        return EXIT_FAIL
    if rebuilt != h:
        print("replay does not reproduce the hypergraph")
        return EXIT_FAIL
    print("verified: ok")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "star":
        h = star_instance(args.n)
    else:
        h, _ = quadratic_surplus_instance(args.n)
    sys.stdout.write(format_hypergraph(h))
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="hsplit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mincut", help="minimum {u,v}-cut value and witness")
    p.add_argument("file")
    p.add_argument("--source", required=True)
    p.add_argument("--sink", required=True)
    p.set_defaults(func=cmd_mincut)

    p = sub.add_parser("splitoff", help="complete h-splitting-off at a vertex")
    p.add_argument("file")
    p.add_argument("--vertex", required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--script", help="write the h-merge/h-trim script here")
    p.set_defaults(func=cmd_splitoff)

    p = sub.add_parser("cover", help="weak-to-strong cover for pairwise requirements")
    p.add_argument("file")
    p.add_argument("--req", required=True, help="requirement file (req: u v value)")
    p.add_argument("--json", help="write the full cover result as JSON here")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("decompose", help="build script for a k-connected hypergraph")
    p.add_argument("file")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("orient", help="Steiner rooted k-hyperarc-connected orientation")
    p.add_argument("file")
    p.add_argument("--root", required=True)
    p.add_argument("--terminals", help="comma-separated; default: all vertices")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("verify", help="verify a produced artifact")
    p.add_argument("what", choices=["splitoff", "orientation", "pinching"])
    p.add_argument("file", help="the original hypergraph")
    p.add_argument("result", help="the artifact to verify")
    p.add_argument("--vertex", help="split vertex (splitoff)")
    p.add_argument("--script", help="h-op script to replay (splitoff)")
    p.add_argument("--root", help="root terminal (orientation)")
    p.add_argument("--terminals", help="comma-separated terminals (orientation)")
    p.add_argument("-k", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a benchmark instance")
    p.add_argument("--kind", choices=["star", "appendixA"], required=True)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ContractViolation, ReplayError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
