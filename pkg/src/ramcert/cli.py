"""Command line front end.

Exit status: 0 when the job completed (certified or mathematically
inconclusive), 2 when a budget stopped it, 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .complexes import Graph, InvalidInput, SimplicialComplex, boundary_simplex, load_json
from .criterion import certify_chromatic, certify_no_face_coloring, certify_ramsey, prime_power, sweep_ramsey
from .homology import StructuralError, incidence_matrices, reduced_betti
from .oracles import OracleRefused, brute_ramsey_holds, chromatic_number, exists_face_coloring
from .polytopal import (
    Budget,
    BudgetExhausted,
    Skeleton,
    default_max_cells,
    enumerate_skeleton,
    hom_complex,
    is_prime,
    part_complex,
    rainbow_complex,
)
from .selfcheck import SUITES, run_selfcheck

EXIT_OK, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2

log = logging.getLogger("ramcert")


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of option values; command-line flags win")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--budget-cells", type=int, help="cell cap (default: $RAMCERT_BUDGET_CELLS or built-in)")
    common.add_argument("--time-limit", type=float, help="enumeration time cap in seconds")
    common.add_argument("--workers", type=int, help="parallel rank jobs (default: CPU count)")
    common.add_argument("--max-dim", type=int, help="skeleton dimension cutoff")
    common.add_argument("--p", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--colors", "-n", type=int, dest="colors")
    common.add_argument("--N", type=int, dest="N")
    common.add_argument("--graph")
    common.add_argument("--complex")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ramcert", description="Cohomological certificates for colorings and Ramsey bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", parents=[common], help="emit a skeleton as JSON")
    build.add_argument("family", choices=["ram", "hom", "part", "rainbow"])
    build.add_argument("--source", help="source complex JSON (ram)")
    build.add_argument("--target", help="target complex JSON (ram)")
    build.add_argument("--m", type=int, help="use the boundary of Delta_m as source (ram) or coordinate count (rainbow)")
    build.add_argument("--g1")
    build.add_argument("--g2")
    build.add_argument("--method", choices=["direct", "ram"])

    betti = sub.add_parser("betti", parents=[common], help="reduced Betti numbers of a skeleton file")
    betti.add_argument("--skeleton", required=True)
    betti.add_argument("--up-to", type=int, dest="up_to")

    sub.add_parser("certify-chromatic", parents=[common], help="certify chi(G) > n")
    ramsey = sub.add_parser("certify-ramsey", parents=[common], help="certify R(G; n) <= N")
    ramsey.add_argument("--method", choices=["direct", "ram"])
    ramsey.add_argument("--sweep-N", type=_int_list, dest="sweep_N", help="comma-separated N values")
    ramsey.add_argument("--sweep-m", type=_int_list, dest="sweep_m", help="comma-separated prime powers m")
    sub.add_parser("certify-partition", parents=[common], help="certify that a complex has no n-coloring by faces")

    oracle = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    oracle.add_argument("which", choices=["face-coloring", "ramsey", "chromatic"])

    check = sub.add_parser("selfcheck", parents=[common], help="run the invariant suites")
    check.add_argument("--only", action="append", choices=list(SUITES))
    return parser


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if not args.config:
        return args
    config = load_json(args.config)
    for key, value in config.items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)
    return args


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise InvalidInput(f"missing required option(s): {', '.join('--' + m.replace('_', '-') for m in missing)}")


def _validate_params(args):
    if args.p is not None and not is_prime(args.p):
        raise InvalidInput(f"--p {args.p} is not prime")
    if args.k is not None and args.k < 1:
        raise InvalidInput("--k must be >= 1")
    if args.colors is not None and args.colors < 2 and args.command.startswith("certify"):
        raise InvalidInput("--colors must be >= 2")


def _graph(path) -> Graph:
    return Graph.from_json(load_json(path))


def _complex(path) -> SimplicialComplex:
    return SimplicialComplex.from_json(load_json(path))


def _budget(args) -> Budget:
    return Budget(max_cells=args.budget_cells or default_max_cells(), time_limit=args.time_limit)


def _emit(report: dict, args) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_build(args) -> int:
    max_dim = 2 if args.max_dim is None else args.max_dim
    budget = _budget(args)
    try:
        if args.family == "ram":
            _require(args, "target")
            if args.source:
                source = _complex(args.source)
            else:
                _require(args, "m")
                source = boundary_simplex(args.m)
            skel = enumerate_skeleton(source, _complex(args.target), max_dim, budget)
        elif args.family == "hom":
            _require(args, "g1", "g2")
            skel = hom_complex(_graph(args.g1), _graph(args.g2), max_dim, budget)
        elif args.family == "part":
            _require(args, "complex", "colors")
            skel = part_complex(_complex(args.complex), args.colors, max_dim, budget)
        else:
            _require(args, "graph", "N", "m")
            skel = rainbow_complex(_graph(args.graph), args.N, args.m, max_dim, budget, method=args.method or "direct")
    except BudgetExhausted as exc:
        _emit({"status": "budget", "reason": str(exc), "partial": exc.stats}, args)
        return EXIT_BUDGET
    _emit(skel.to_json(), args)
    return EXIT_OK


def _cmd_betti(args) -> int:
    _require(args, "p")
    skel = Skeleton.from_json(load_json(args.skeleton))
    up_to = skel.max_dim - 1 if args.up_to is None else args.up_to
    stats: dict = {}
    table = reduced_betti(incidence_matrices(skel), args.p, up_to, workers=args.workers or 1, stats=stats)
    report = table.to_json()
    report["cells"] = skel.dims
    for entry in stats["elimination"].values():
        entry.pop("seconds", None)
    report["elimination"] = stats["elimination"]
    _emit(report, args)
    return EXIT_OK


def _finish(cert, args) -> int:
    _emit(cert.to_json(), args)
    return EXIT_BUDGET if cert.budget_exhausted else EXIT_OK


def _cmd_certify_chromatic(args) -> int:
    _require(args, "graph", "colors", "p", "k")
    return _finish(certify_chromatic(_graph(args.graph), args.colors, args.p, args.k, _budget(args), args.workers), args)


def _cmd_certify_partition(args) -> int:
    _require(args, "complex", "colors", "p", "k")
    cert = certify_no_face_coloring(_complex(args.complex), args.colors, args.p, args.k, _budget(args), args.workers)
    return _finish(cert, args)


def _cmd_certify_ramsey(args) -> int:
    _require(args, "graph", "colors")
    g = _graph(args.graph)
    if args.sweep_N or args.sweep_m:
        Ns = args.sweep_N or ([args.N] if args.N else None)
        if args.sweep_m:
            ms = args.sweep_m
        else:
            _require(args, "p", "k")
            ms = [args.p**args.k]
        if not Ns:
            raise InvalidInput("sweep needs --N or --sweep-N")
        for m in ms:
            if prime_power(m) is None:
                raise InvalidInput(f"--sweep-m value {m} is not a prime power")
        report = sweep_ramsey(g, args.colors, Ns, ms, lambda: _budget(args), args.workers)
        _emit(report, args)
        budgeted = any(c["reason"].startswith("budget") for c in report["certificates"])
        return EXIT_BUDGET if budgeted else EXIT_OK
    _require(args, "N", "p", "k")
    cert = certify_ramsey(g, args.colors, args.N, args.p, args.k, _budget(args), args.workers, args.method or "direct")
    return _finish(cert, args)


def _cmd_oracle(args) -> int:
    if args.which == "face-coloring":
        _require(args, "complex", "colors")
        witness = exists_face_coloring(_complex(args.complex), args.colors)
        report = {
            "oracle": "face-coloring",
            "n": args.colors,
            "exists": witness is not None,
            "witness": None if witness is None else [[v, c] for v, c in witness.assignment.items()],
        }
    elif args.which == "ramsey":
        _require(args, "graph", "colors", "N")
        holds = brute_ramsey_holds(_graph(args.graph), args.colors, args.N)
        report = {"oracle": "ramsey", "n": args.colors, "N": args.N, "holds": holds}
    else:
        _require(args, "graph")
        report = {"oracle": "chromatic", "chromatic_number": chromatic_number(_graph(args.graph))}
    _emit(report, args)
    return EXIT_OK


def _cmd_selfcheck(args) -> int:
    results = run_selfcheck(args.only)
    for r in results:
        print(r.line(), file=sys.stderr)
    _emit({"selfcheck": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}, args)
    return EXIT_OK if all(r.passed for r in results) else EXIT_ERROR


COMMANDS = {
    "build": _cmd_build,
    "betti": _cmd_betti,
    "certify-chromatic": _cmd_certify_chromatic,
    "certify-ramsey": _cmd_certify_ramsey,
    "certify-partition": _cmd_certify_partition,
    "oracle": _cmd_oracle,
    "selfcheck": _cmd_selfcheck,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args = _merge_config(args)
        if args.workers is None:
            args.workers = os.cpu_count() or 1
        _validate_params(args)
        return COMMANDS[args.command](args)
    except (InvalidInput, OracleRefused, StructuralError, OSError) as exc:
        print(f"ramcert: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
