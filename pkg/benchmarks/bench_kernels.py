"""Compiled vs pure-Python kernels on the bundled grids.

    python3 benchmarks/bench_kernels.py [--repeat 3] [grid ...]

For each grid, prints the time to build the complex and the time to compute
its homology under both backends, plus the speedup.  Both backends must agree
on the edge set; a mismatch aborts the run.
"""

from __future__ import annotations

import argparse
import sys
import time
from importlib import resources

from gridfloer import kernels
from gridfloer.complex import build_complex
from gridfloer.grid_model import load_grid
from gridfloer.homology import blocks, gf2_rank

DEFAULT_GRIDS = ("unknot", "trefoil_right", "trefoil6_left", "tref_sing1", "tref_sing2", "tref_sing3_ppm")


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _rank_all(cx, backend):
    groups = blocks(cx)
    total = 0
    for (m, a), gens in groups.items():
        target = groups.get((m - 1, a), [])
        if not target:
            continue
        pos = {g: i for i, g in enumerate(target)}
        rows = []
        for g in gens:
            bits = 0
            for t in cx.edges.get(g, ()):
                j = pos.get(t)
                if j is not None:
                    bits ^= 1 << j
            if bits:
                rows.append(bits)
        total += kernels.rank(rows, len(target), backend=backend) if backend else gf2_rank(rows)
    return total


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("grids", nargs="*", help="grid files (default: bundled corpus)")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if not kernels.HAVE_EXTENSION:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    data = resources.files("gridfloer") / "data"
    paths = args.grids or [str(data / f"{name}.grid") for name in DEFAULT_GRIDS]
    print(f"{'grid':<20} {'gens':>8} {'build py':>10} {'build cy':>10} {'x':>6} {'rank py':>9} {'rank cy':>9} {'x':>6}")
    for path in paths:
        grid = load_grid(path)
        t_py, cx_py = _best(lambda: build_complex(grid, backend="python"), args.repeat)
        t_cy, cx_cy = _best(lambda: build_complex(grid, backend="cython"), args.repeat)
        if {s: sorted(t) for s, t in cx_py.edges.items()} != {s: sorted(t) for s, t in cx_cy.edges.items()}:
            print(f"{path}: backends disagree on the differential", file=sys.stderr)
            return 1
        r_py, rank_py = _best(lambda: _rank_all(cx_cy, "python"), args.repeat)
        r_cy, rank_cy = _best(lambda: _rank_all(cx_cy, "cython"), args.repeat)
        if rank_py != rank_cy:
            print(f"{path}: backends disagree on ranks", file=sys.stderr)
            return 1
        name = path.rsplit("/", 1)[-1].removesuffix(".grid")
        print(f"{name:<20} {len(cx_cy):>8} {t_py:>10.3f} {t_cy:>10.3f} {t_py / t_cy:>6.1f}"
              f" {r_py:>9.3f} {r_cy:>9.3f} {r_py / max(r_cy, 1e-9):>6.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
