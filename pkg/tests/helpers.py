"""Random grid builders shared by the test modules."""

from __future__ import annotations

import random
from importlib import resources

from gridfloer.grid_model import (
    GridError,
    SingularGrid,
    load_grid,
    merge_columns,
    merge_rows,
)
from gridfloer.moves import add_singular_loop, rotate_column

DATA = resources.files("gridfloer") / "data"


def corpus(name: str) -> SingularGrid:
    return load_grid(str(DATA / f"{name}.grid"))


def corpus_names(max_size: int | None = None):
    names = sorted(p.name[: -len(".grid")] for p in DATA.iterdir() if p.name.endswith(".grid"))
    if max_size is None:
        return names
    return [n for n in names if corpus(n).size <= max_size]


def random_regular(rng: random.Random, n: int) -> SingularGrid:
    while True:
        o = list(range(n))
        x = list(range(n))
        rng.shuffle(o)
        rng.shuffle(x)
        if all(a != b for a, b in zip(o, x)):
            return SingularGrid.from_permutations(o, x)


def random_singular(rng: random.Random, n: int, k: int, rows: bool = True) -> SingularGrid:
    """Random grid of size n with k double points, made by merging interleaved lines."""
    while True:
        grid = random_regular(rng, n)
        try:
            for _ in range(k):
                merge = rng.choice((merge_columns, merge_rows)) if rows else merge_columns
                dim = grid.num_cols if merge is merge_columns else grid.num_rows
                spots = list(range(dim - 1))
                rng.shuffle(spots)
                for c in spots:
                    try:
                        grid = merge(grid, c, rng.choice((1, -1)))
                        break
                    except GridError:
                        continue
                else:
                    raise GridError("no interleaved pair")
        except GridError:
            continue
        return grid


def random_loop_grid(rng: random.Random, max_base: int) -> SingularGrid:
    """A singular loop added to a random grid of size at most ``max_base``."""
    while True:
        n = rng.randint(2, max_base)
        k = rng.choice((0, 0, 1)) if n >= 4 else 0
        base = random_singular(rng, n, k) if k else random_regular(rng, n)
        cols = [c for c in range(base.num_cols) if not base.is_singular("col", c)
                and abs(base.column(c)[0].row - base.column(c)[1].row) == 1]
        if not cols:
            continue
        return add_singular_loop(base, rng.choice(cols), rng.choice(("left", "right")))


def rotation_seed(rng: random.Random, sizes=(5, 6), k: int = 1) -> SingularGrid:
    """A random singular grid with at least one column that admits a rotation."""
    while True:
        grid = random_singular(rng, rng.choice(sizes), k, rows=False)
        for c in grid.singular_cols:
            try:
                rotate_column(grid, c)
            except GridError:
                continue
            return grid
