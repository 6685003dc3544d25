"""Command-line front end: ``gridfloer <command> <grid file> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource limit.
Results go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import verify
from .complex import ResourceLimit, build_complex
from .resolution_cube import build_cube
from .grid_model import GridError, SingularGrid, count_components, load_grid, serialize_grid
from .homology import (
    deconvolve_hat,
    euler_characteristic,
    format_euler,
    format_poly,
    homology_ranks,
    ranks_json,
)
from .moves import apply_move, parse_script

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

VERIFY_FLAGS = ("d2", "vassiliev", "symmetry", "acyclic")
# --all skips acyclicity: it only holds for grids carrying a singular loop
ALL_CHECKS = ("d2", "vassiliev", "symmetry")


def _global_options(parser, defaults=True):
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    parser.add_argument("--jobs", type=int, help="worker processes (default: all cores)",
                        **({"default": None} if defaults else kw))
    parser.add_argument("--seed", type=int, help="random seed", **({"default": 0} if defaults else kw))
    parser.add_argument("--budget", type=int, help="generator budget (env GRIDFLOER_BUDGET)",
                        **({"default": None} if defaults else kw))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridfloer", description=__doc__.splitlines()[0])
    _global_options(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="grid file")
        _global_options(p, defaults=False)
        return p

    command("validate", "check a grid file")
    p = command("compute", "Poincare polynomial of the homology")
    p.add_argument("--flavor", choices=("tilde", "hat"), default="hat")
    p.add_argument("--json", action="store_true")
    command("euler", "graded Euler characteristic (t = -1)")
    p = command("resolve", "print one resolved regular grid")
    p.add_argument("--index", required=True, help="resolution bits, e.g. 010")
    p = command("moves", "apply a move script and print the result")
    p.add_argument("--script", required=True, help="move script file")
    p = command("fuzz", "random move walk, homology compared after every move")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--max-size", type=int, default=8)
    p = command("verify", "run verification checks")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true")
    for flag in VERIFY_FLAGS:
        group.add_argument(f"--{flag}", action="store_true")
    return parser


def _hat(grid, budget):
    cx = build_complex(grid, budget=budget)
    return cx, deconvolve_hat(homology_ranks(cx), cx.n, cx.components)


def cmd_validate(grid: SingularGrid, args) -> int:
    print(f"ok size={grid.size} k={grid.num_singular} components={count_components(grid)}")
    return EXIT_OK


def cmd_compute(grid: SingularGrid, args) -> int:
    cx = build_complex(grid, budget=args.budget)
    ranks = homology_ranks(cx)
    poly = ranks if args.flavor == "tilde" else deconvolve_hat(ranks, cx.n, cx.components)
    if args.json:
        out = {
            "flavor": args.flavor,
            "n": cx.n,
            "components": cx.components,
            "ranks": ranks_json(poly),
            "poincare": format_poly(poly),
            "euler": format_euler(euler_characteristic(poly)),
        }
        print(json.dumps(out))
    else:
        print(format_poly(poly))
    return EXIT_OK


def cmd_euler(grid: SingularGrid, args) -> int:
    _, hat = _hat(grid, args.budget)
    print(format_euler(euler_characteristic(hat)))
    return EXIT_OK


def cmd_resolve(grid: SingularGrid, args) -> int:
    bits = args.index.strip()
    if len(bits) != grid.num_singular or set(bits) - {"0", "1"}:
        raise ValueError(f"--index needs {grid.num_singular} bits of 0/1")
    cube = build_cube(grid)
    o_row, x_row = cube.resolve(tuple(int(b) for b in bits))
    sys.stdout.write(serialize_grid(SingularGrid.from_permutations(o_row, x_row)))
    return EXIT_OK


def cmd_moves(grid: SingularGrid, args) -> int:
    with open(args.script, encoding="utf-8") as fh:
        moves = parse_script(fh.read())
    for move in moves:
        grid = apply_move(grid, move)
    sys.stdout.write(serialize_grid(grid))
    return EXIT_OK


def cmd_fuzz(grid: SingularGrid, args) -> int:
    report = verify.fuzz_invariance(grid, args.seed, args.steps, name=args.file,
                                    max_size=args.max_size, budget=args.budget)
    print(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def _run_check(payload):
    name, text, path, budget = payload
    from .grid_model import parse_grid

    return verify.CHECKS[name](parse_grid(text), name=path, budget=budget)


def cmd_verify(grid: SingularGrid, args) -> int:
    chosen = [f for f in VERIFY_FLAGS if getattr(args, f, False)] or list(ALL_CHECKS)
    text = serialize_grid(grid)
    payloads = [(name, text, args.file, args.budget) for name in chosen]
    jobs = args.jobs or os.cpu_count() or 1
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(payloads))) as pool:
            reports = list(pool.map(_run_check, payloads))
    else:
        reports = [_run_check(p) for p in payloads]
    for r in reports:
        r.seed = args.seed
        print(r.to_json())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {
    "validate": cmd_validate,
    "compute": cmd_compute,
    "euler": cmd_euler,
    "resolve": cmd_resolve,
    "moves": cmd_moves,
    "fuzz": cmd_fuzz,
    "verify": cmd_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.budget is None and os.environ.get("GRIDFLOER_BUDGET"):
        try:
            args.budget = int(os.environ["GRIDFLOER_BUDGET"])
        except ValueError:
            print("error: GRIDFLOER_BUDGET is not an integer", file=sys.stderr)
            return EXIT_INPUT
    try:
        grid = load_grid(args.file)
        return COMMANDS[args.command](grid, args)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (GridError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
