"""Singular grid diagrams: data model, grid files, components, moves, symmetries."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

VALID_PATTERNS = ("OOXX", "OXXO", "XXOO", "XOOX")


class GridError(Exception):
    pass


class GridSyntaxError(GridError):
    """Malformed line in a grid file."""


class ValidationError(GridError):
    def __init__(self, rule: str, message: str):
        super().__init__(f"{rule}: {message}")
        self.rule = rule


class IllegalMove(GridError):
    pass


class PreconditionError(GridError):
    pass


@dataclass(frozen=True, order=True)
class Decoration:
    kind: str  # "O" or "X"
    col: int
    row: int


def _other(kind: str) -> str:
    return "X" if kind == "O" else "O"


@dataclass(frozen=True)
class SingularGrid:
    """A decorated grid; columns and rows are 0-based from the bottom-left corner.

    ``orientations`` maps ``("col", i)`` / ``("row", j)`` for every singular RoC
    to +1 or -1 (double-point orientation compared with the drawing plane).
    """

    num_cols: int
    num_rows: int
    decorations: tuple[Decoration, ...]
    orientations: tuple[tuple[tuple[str, int], int], ...] = ()
    _cells: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        decos = tuple(sorted(self.decorations, key=lambda d: (d.col, d.row, d.kind)))
        object.__setattr__(self, "decorations", decos)
        orients = tuple(sorted((tuple(k), int(v)) for k, v in dict(self.orientations).items()))
        object.__setattr__(self, "orientations", orients)
        object.__setattr__(self, "_cells", {(d.col, d.row): d.kind for d in decos})

    # construction helpers -------------------------------------------------
    @classmethod
    def build(cls, num_cols, num_rows, decorations, orientations=None, validate=True):
        decos = tuple(d if isinstance(d, Decoration) else Decoration(*d) for d in decorations)
        grid = cls(num_cols, num_rows, decos, tuple((orientations or {}).items()))
        if validate:
            grid.validate()
        return grid

    @classmethod
    def from_permutations(cls, o_rows: Iterable[int], x_rows: Iterable[int]) -> "SingularGrid":
        """Regular grid with the O (resp. X) of column i in row o_rows[i] (resp. x_rows[i])."""
        o_rows, x_rows = list(o_rows), list(x_rows)
        n = len(o_rows)
        decos = [Decoration("O", i, r) for i, r in enumerate(o_rows)]
        decos += [Decoration("X", i, r) for i, r in enumerate(x_rows)]
        return cls.build(n, n, decos)

    # basic accessors -------------------------------------------------------
    @property
    def size(self) -> int:
        return sum(1 for d in self.decorations if d.kind == "O")

    @property
    def singular_cols(self) -> tuple[int, ...]:
        return tuple(i for (axis, i), _ in self.orientations if axis == "col")

    @property
    def singular_rows(self) -> tuple[int, ...]:
        return tuple(j for (axis, j), _ in self.orientations if axis == "row")

    @property
    def singular_rocs(self) -> tuple[tuple[str, int], ...]:
        return tuple(key for key, _ in self.orientations)

    @property
    def num_singular(self) -> int:
        return len(self.orientations)

    def orientation(self, roc: tuple[str, int]) -> int:
        return dict(self.orientations)[roc]

    def is_singular(self, axis: str, index: int) -> bool:
        return (axis, index) in dict(self.orientations)

    def kind_at(self, col: int, row: int) -> str | None:
        return self._cells.get((col, row))

    def column(self, c: int) -> list[Decoration]:
        return sorted((d for d in self.decorations if d.col == c), key=lambda d: d.row)

    def row(self, r: int) -> list[Decoration]:
        return sorted((d for d in self.decorations if d.row == r), key=lambda d: d.col)

    def line(self, axis: str, index: int) -> list[Decoration]:
        return self.column(index) if axis == "col" else self.row(index)

    def with_orientations(self, orientations: Mapping[tuple[str, int], int]) -> "SingularGrid":
        return SingularGrid.build(self.num_cols, self.num_rows, self.decorations, dict(orientations))

    # validation ------------------------------------------------------------
    def validate(self) -> "SingularGrid":
        if self.num_cols < 1 or self.num_rows < 1:
            raise ValidationError("shape", "grid must have at least one column and one row")
        seen = set()
        for d in self.decorations:
            if d.kind not in ("O", "X"):
                raise ValidationError("kind", f"unknown decoration kind {d.kind!r}")
            if not (0 <= d.col < self.num_cols and 0 <= d.row < self.num_rows):
                raise ValidationError("bounds", f"{d.kind} at ({d.col},{d.row}) is outside the grid")
            if (d.col, d.row) in seen:
                raise ValidationError("cell", f"two decorations share cell ({d.col},{d.row})")
            seen.add((d.col, d.row))
        for (axis, idx), sign in self.orientations:
            limit = self.num_cols if axis == "col" else self.num_rows
            if axis not in ("col", "row") or not 0 <= idx < limit:
                raise ValidationError("singular", f"singular {axis} {idx} does not exist")
            if sign not in (1, -1):
                raise ValidationError("orientation", f"orientation of {axis} {idx} must be + or -")
        for axis, count in (("col", self.num_cols), ("row", self.num_rows)):
            for idx in range(count):
                word = "".join(d.kind for d in self.line(axis, idx))
                singular = self.is_singular(axis, idx)
                expected = 2 if singular else 1
                if word.count("O") != expected or word.count("X") != expected:
                    state = "singular" if singular else "regular"
                    raise ValidationError(
                        "count", f"{state} {axis} {idx} holds {word or 'nothing'}"
                    )
                if singular and word not in VALID_PATTERNS:
                    raise ValidationError("pattern", f"singular {axis} {idx} reads {word}")
        n = self.size
        if self.num_cols != n - len(self.singular_cols) or self.num_rows != n - len(self.singular_rows):
            raise ValidationError("shape", "line counts do not match the grid size")
        return self

    # link structure ----------------------------------------------------------
    def strand_pairs(self) -> list[tuple[Decoration, Decoration]]:
        """Pairs of decorations joined by a straight strand inside one RoC."""
        pairs = []
        for axis, count in (("col", self.num_cols), ("row", self.num_rows)):
            for idx in range(count):
                line = self.line(axis, idx)
                if len(line) == 2:
                    pairs.append((line[0], line[1]))
                else:
                    pairs.append((line[0], line[2]))
                    pairs.append((line[1], line[3]))
        return pairs

    def canonical(self) -> "SingularGrid":
        """Lexicographically least grid over cyclic shifts of the regular RoCs.

        Only shifts that keep every singular RoC at its index's relative position
        are meaningful, so the whole grid is rotated and the least encoding kept.
        """
        best = None
        for dc in range(self.num_cols):
            for dr in range(self.num_rows):
                g = self._shift(dc, dr)
                key = g._key()
                if best is None or key < best[0]:
                    best = (key, g)
        return best[1]

    def _shift(self, dc: int, dr: int) -> "SingularGrid":
        decos = [
            Decoration(d.kind, (d.col + dc) % self.num_cols, (d.row + dr) % self.num_rows)
            for d in self.decorations
        ]
        orients = {}
        for (axis, idx), s in self.orientations:
            mod, shift = (self.num_cols, dc) if axis == "col" else (self.num_rows, dr)
            orients[(axis, (idx + shift) % mod)] = s
        return SingularGrid.build(self.num_cols, self.num_rows, decos, orients, validate=False)

    def _key(self):
        return (self.num_cols, self.num_rows, self.decorations, self.orientations)


def count_components(grid: SingularGrid) -> int:
    """Number of link components, traced through the strands of every RoC."""
    adj: dict[Decoration, list[Decoration]] = {d: [] for d in grid.decorations}
    for a, b in grid.strand_pairs():
        adj[a].append(b)
        adj[b].append(a)
    seen: set[Decoration] = set()
    components = 0
    for start in grid.decorations:
        if start in seen:
            continue
        components += 1
        stack = [start]
        while stack:
            d = stack.pop()
            if d in seen:
                continue
            seen.add(d)
            stack.extend(adj[d])
    return components


def merge_columns(grid: SingularGrid, c: int, orientation: int = 1) -> SingularGrid:
    """Merge regular columns c and c+1 into one singular column.

    The four decorations must alternate between the two columns when read
    bottom to top, so that the merged column has a valid singular pattern.
    """
    if grid.is_singular("col", c) or grid.is_singular("col", c + 1) or c + 1 >= grid.num_cols:
        raise PreconditionError("merge needs two adjacent regular columns")
    decos = []
    for d in grid.decorations:
        col = d.col if d.col <= c else d.col - 1
        decos.append(Decoration(d.kind, col, d.row))
    orients = {}
    for (a, i), s in grid.orientations:
        orients[(a, i if a == "row" or i <= c else i - 1)] = s
    orients[("col", c)] = orientation
    try:
        return SingularGrid.build(grid.num_cols - 1, grid.num_rows, decos, orients)
    except ValidationError as exc:
        raise PreconditionError(f"columns {c} and {c + 1} do not interleave") from exc


def merge_rows(grid: SingularGrid, r: int, orientation: int = 1) -> SingularGrid:
    return diagonal_flip(merge_columns(diagonal_flip(grid), r, -orientation))


# ---------------------------------------------------------------------------
# grid files

def parse_grid(text: str) -> SingularGrid:
    header = False
    cols = rows = None
    decos = []
    orients = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if not header:
                if parts != ["grid", "v1"]:
                    raise GridSyntaxError(f"line {lineno}: expected header 'grid v1'")
                header = True
            elif parts[0] == "cols" and len(parts) == 2:
                cols = int(parts[1])
            elif parts[0] == "rows" and len(parts) == 2:
                rows = int(parts[1])
            elif parts[0] in ("O", "X") and len(parts) == 3:
                decos.append(Decoration(parts[0], int(parts[1]), int(parts[2])))
            elif parts[0] == "sing" and len(parts) == 4 and parts[1] in ("col", "row"):
                if parts[3] not in ("+", "-"):
                    raise GridSyntaxError(f"line {lineno}: orientation must be + or -")
                key = (parts[1], int(parts[2]))
                if key in orients:
                    raise GridSyntaxError(f"line {lineno}: duplicate singular {parts[1]}")
                orients[key] = 1 if parts[3] == "+" else -1
            else:
                raise GridSyntaxError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError:
            raise GridSyntaxError(f"line {lineno}: bad integer in {raw.strip()!r}") from None
    if not header:
        raise GridSyntaxError("missing header 'grid v1'")
    if cols is None or rows is None:
        raise GridSyntaxError("missing 'cols' or 'rows' line")
    return SingularGrid.build(cols, rows, decos, orients)


def serialize_grid(grid: SingularGrid) -> str:
    lines = ["grid v1", f"cols {grid.num_cols}", f"rows {grid.num_rows}"]
    for d in grid.decorations:
        lines.append(f"{d.kind} {d.col} {d.row}")
    for axis in ("col", "row"):
        for (a, idx), s in grid.orientations:
            if a == axis:
                lines.append(f"sing {axis} {idx} {'+' if s > 0 else '-'}")
    return "\n".join(lines) + "\n"


def load_grid(path) -> SingularGrid:
    with open(path, encoding="utf-8") as fh:
        return parse_grid(fh.read())


# ---------------------------------------------------------------------------
# symmetries

def diagonal_flip(grid: SingularGrid) -> SingularGrid:
    """Reflect along y = x; the result describes the reversed link.

    In space this is a half-turn about the diagonal, so every double-point
    plane is seen from the other side and all stored flags change sign.
    """
    decos = [Decoration(d.kind, d.row, d.col) for d in grid.decorations]
    orients = {("row" if a == "col" else "col", i): -s for (a, i), s in grid.orientations}
    return SingularGrid.build(grid.num_rows, grid.num_cols, decos, orients)


def decoration_swap(grid: SingularGrid) -> SingularGrid:
    """Exchange O and X.

    Flags are read relative to the O decorations, so swapping the kinds flips
    that convention; negating every flag keeps each double point as it was.
    """
    decos = [Decoration(_other(d.kind), d.col, d.row) for d in grid.decorations]
    orients = {roc: -s for roc, s in grid.orientations}
    return SingularGrid.build(grid.num_cols, grid.num_rows, decos, orients)


def quarter_turn(grid: SingularGrid) -> SingularGrid:
    """Rotate the flipped grid a quarter turn: net effect is reversing the column order.

    This mirrors the link.  Row flags change sign and column flags are kept;
    the mirror relation then reads the double points as reversed.
    """
    m = grid.num_cols
    decos = [Decoration(d.kind, m - 1 - d.col, d.row) for d in grid.decorations]
    orients = {}
    for (a, i), s in grid.orientations:
        if a == "col":
            orients[("col", m - 1 - i)] = s
        else:
            orients[("row", i)] = -s
    return SingularGrid.build(grid.num_cols, grid.num_rows, decos, orients)


TRANSFORMS = {
    "flip": diagonal_flip,
    "swap": decoration_swap,
    "quarter": quarter_turn,
}


def transform(grid: SingularGrid, name: str) -> SingularGrid:
    try:
        return TRANSFORMS[name](grid)
    except KeyError:
        raise ValueError(f"unknown transform {name!r}") from None


# elementary moves and singular loops live in ``moves``; re-exported here so the
# whole grid data model is reachable from one module
from .moves import (  # noqa: E402
    Commutation,
    CyclicPermutation,
    Destabilization,
    ElementaryMove,
    Rotation,
    Stabilization,
    add_singular_loop,
    apply_move,
    legal_moves,
)
