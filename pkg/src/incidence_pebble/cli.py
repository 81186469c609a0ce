"""Command-line front end.

Exit codes: 0 success (any verdict), 2 usage or parameter error, 3 IO or
parse error, 4 other library error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import oracle
from .engine import default_supports, run_extraction, run_recognition
from .errors import GeometryFormatError, IncidenceError, ParameterError
from .geometry import IncidenceGeometry, SparsityParams, parse_params, read_geometry, validate_and_normalize_params
from .reductions import (
    construct_tight_geometry,
    derive_params,
    hypergraph_to_geometry,
    load_hypergraph,
    random_geometry,
)

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_MODULE = 0, 2, 3, 4


class UsageError(Exception):
    pass


def resolve_preset(name: str) -> SparsityParams:
    """``rods``, ``kplane:K``, ``dual-kplane:K`` or ``graph:K,L``."""
    try:
        if name == "rods":
            return validate_and_normalize_params(2, 2, 3, 3)
        kind, _, arg = name.partition(":")
        if kind == "kplane":
            k = int(arg)
            return validate_and_normalize_params(1, 1, k, k)
        if kind == "dual-kplane":
            k = int(arg)
            return validate_and_normalize_params(1, k, 1, k)
        if kind == "graph":
            k, l = (int(x) for x in arg.split(","))
            return derive_params(k, l, 2)
    except ValueError as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"bad preset argument in {name!r}") from None
    raise ParameterError(f"unknown preset {name!r}")


def _params(args) -> SparsityParams:
    if args.params is not None and args.preset is not None:
        raise UsageError("give either --params or --preset, not both")
    if args.params is not None:
        return parse_params(args.params)
    if args.preset is not None:
        return resolve_preset(args.preset)
    raise UsageError("one of --params or --preset is required")


def _emit(obj) -> None:
    print(json.dumps(obj))


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def _debug_supports(args, g: IncidenceGeometry):
    if not args.debug_invariants:
        return None
    return default_supports(g, random.Random(args.seed))


def cmd_check(args) -> int:
    p = _params(args)
    g = read_geometry(args.geometry)
    verdict = run_recognition(g, p, debug_invariants=args.debug_invariants, supports=_debug_supports(args, g))
    _emit({**verdict.to_json_dict(), "params": list(p.as_tuple())})
    return EXIT_OK


def cmd_extract(args) -> int:
    p = _params(args)
    g = read_geometry(args.geometry)
    verdict = run_extraction(g, p, debug_invariants=args.debug_invariants, supports=_debug_supports(args, g))
    if args.out:
        _write(args.out, g.with_incidences(verdict.accepted).dumps())
    _emit({**verdict.to_json_dict(), "params": list(p.as_tuple())})
    return EXIT_OK


def cmd_convert(args) -> int:
    with open(args.hypergraph, encoding="utf-8") as fh:
        h = load_hypergraph(fh.read())
    r = h.uniformity
    if r is None:
        raise UsageError("deriving parameters needs a uniform hypergraph with at least one edge")
    p = derive_params(args.k, args.l, r, args.lam)
    g = hypergraph_to_geometry(h)
    if args.out:
        _write(args.out, g.dumps())
    _emit({"params": list(p.as_tuple()), "uniformity": r, "geometry": g.to_json_dict()})
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.kind == "tight":
        g = construct_tight_geometry(_params(args), args.points, args.lines, check_steps=args.debug_invariants)
    else:
        g = random_geometry(args.points, args.lines, args.density, args.seed)
    if args.out:
        _write(args.out, g.dumps())
    else:
        _emit(g.to_json_dict())
    return EXIT_OK


def cmd_oracle(args) -> int:
    p = _params(args)
    g = read_geometry(args.geometry)
    bound = {} if args.oracle_bound is None else {"bound": args.oracle_bound}
    if args.mode == "verdict":
        report = oracle.brute_force_verdict(g, p, **bound).to_json_dict()
    elif args.mode == "max-subset":
        best = oracle.max_sparse_subset(g, p, **bound)
        report = {"size": len(best), "accepted": [list(i) for i in best]}
        if args.out:
            _write(args.out, g.with_incidences(best).dumps())
    else:
        blocks = oracle.enumerate_blocks(g, p, **bound)
        closure = oracle.verify_block_closure(g, p, **bound)
        report = {
            "blocks": [b.support.to_json_dict() for b in blocks],
            "closure_pairs_checked": closure.pairs_checked,
            "closure_counterexamples": len(closure.counterexamples),
        }
    _emit({**report, "params": list(p.as_tuple())})
    return EXIT_OK


def cmd_verify_matroid(args) -> int:
    p = _params(args)
    if args.pair:
        b1, b2 = (read_geometry(path) for path in args.pair)
        report = oracle.verify_matroid_exchange(len(b1.points), len(b1.lines), p, pair=(b1, b2))
    else:
        if args.points is None or args.lines is None:
            raise UsageError("verify-matroid needs --points and --lines, or --pair")
        bound = {} if args.oracle_bound is None else {"bound": args.oracle_bound}
        report = oracle.verify_matroid_exchange(args.points, args.lines, p, **bound)
    _emit({**report.to_json_dict(), "params": list(p.as_tuple())})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="incidence-pebble",
        description="Pebble game sparsity checks for rank 2 incidence geometries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, params=True):
        if params:
            sp.add_argument("--params", help="lambda,k1,k2,l")
            sp.add_argument("--preset", help="rods | kplane:K | dual-kplane:K | graph:K,L")
        sp.add_argument("--out", help="write the resulting geometry here")
        sp.add_argument("--oracle-bound", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--debug-invariants", action="store_true")

    sp = sub.add_parser("check", help="decide sparsity and tightness")
    common(sp)
    sp.add_argument("geometry")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("extract", help="greedy maximum sparse subgeometry (lambda = 1)")
    common(sp)
    sp.add_argument("geometry")
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("convert", help="hypergraph to incidence geometry with derived parameters")
    common(sp, params=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=int, default=None)
    sp.add_argument("hypergraph")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("generate", help="build a tight or random geometry")
    common(sp)
    sp.add_argument("kind", choices=["tight", "random"])
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--lines", type=int, required=True)
    sp.add_argument("--density", type=float, default=0.5)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("oracle", help="brute-force reference checks")
    common(sp)
    sp.add_argument("--mode", choices=["verdict", "max-subset", "blocks"], default="verdict")
    sp.add_argument("geometry")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify-matroid", help="basis exchange check for tight incidence sets")
    common(sp)
    sp.add_argument("--points", type=int)
    sp.add_argument("--lines", type=int)
    sp.add_argument("--pair", nargs=2, metavar=("B1", "B2"))
    sp.set_defaults(func=cmd_verify_matroid)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, GeometryFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (IncidenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODULE


if __name__ == "__main__":
    sys.exit(main())
