"""Elementary moves on singular grids and the singular-loop constructor."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .grid_model import (
    Decoration,
    GridError,
    GridSyntaxError,
    IllegalMove,
    PreconditionError,
    SingularGrid,
    ValidationError,
    _other,
    diagonal_flip,
)


def _insert_rows(decos, at: int, count: int):
    """Shift every decoration with row >= at up by count."""
    return [Decoration(d.kind, d.col, d.row + count if d.row >= at else d.row) for d in decos]


def _insert_cols(decos, at: int, count: int):
    return [Decoration(d.kind, d.col + count if d.col >= at else d.col, d.row) for d in decos]


def _shift_orients(grid: SingularGrid, axis: str, at: int, count: int):
    out = {}
    for (a, i), s in grid.orientations:
        out[(a, i + count if a == axis and i >= at else i)] = s
    return out


def add_singular_loop(grid: SingularGrid, col: int, side: str = "right") -> SingularGrid:
    """Twist a regular column with decorations in adjacent rows into a singular loop.

    The column becomes singular (orientation +), two rows are inserted between
    its decorations and a regular column closing the loop is added on ``side``.
    """
    if grid.is_singular("col", col):
        raise PreconditionError(f"column {col} is singular")
    lo, hi = grid.column(col)
    if hi.row - lo.row != 1:
        raise PreconditionError(f"decorations of column {col} are not in adjacent rows")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    r = lo.row
    a, b = lo.kind, hi.kind
    decos = [d for d in grid.decorations if d.col != col]
    decos = _insert_rows(decos, r + 1, 2)
    orients = _shift_orients(grid, "row", r + 1, 2)
    new_col = col + 1 if side == "right" else col
    s_col = col if side == "right" else col + 1
    decos = _insert_cols(decos, new_col, 1)
    orients = _shift_orients(SingularGrid(grid.num_cols, grid.num_rows + 2, (), tuple(orients.items())),
                             "col", new_col, 1)
    # singular column reads a a b b; the closing column holds b a on the new rows
    decos += [
        Decoration(a, s_col, r),
        Decoration(a, s_col, r + 1),
        Decoration(b, s_col, r + 2),
        Decoration(b, s_col, r + 3),
        Decoration(b, new_col, r + 1),
        Decoration(a, new_col, r + 2),
    ]
    orients[("col", s_col)] = 1
    return SingularGrid.build(grid.num_cols + 1, grid.num_rows + 2, decos, orients)


# ---------------------------------------------------------------------------
# elementary moves

@dataclass(frozen=True)
class CyclicPermutation:
    """Move the last (``side="end"``) or first (``side="start"``) RoC of ``axis`` to the other side."""

    side: str
    axis: str


@dataclass(frozen=True)
class Commutation:
    """Swap RoCs ``index`` and ``index + 1`` of ``axis``."""

    axis: str
    index: int


@dataclass(frozen=True)
class Stabilization:
    """Replace the decorated cell by a 2x2 block with three decorations.

    ``pattern`` names the empty cell of the block: "NE", "NW", "SE" or "SW".
    The cell's decoration kind together with the pattern gives the eight variants.
    """

    col: int
    row: int
    pattern: str


@dataclass(frozen=True)
class Destabilization:
    """Collapse the 2x2 block whose lower-left cell is (col, row)."""

    col: int
    row: int


@dataclass(frozen=True)
class Rotation:
    """Exchange a singular column for a singular row (``axis="col"``) or back."""

    axis: str
    index: int


ElementaryMove = Union[CyclicPermutation, Commutation, Stabilization, Destabilization, Rotation]

# Flag factor of a rotation, keyed by the side of the lower turning corner.
# With the corner on the left the vertex only turns in the plane; on the right
# the drawing also twists it, so the flag flips.  Calibrated on two-vertex grids.
ROTATION_FLAG = {-1: 1, 1: -1}


def _rebuild(grid, num_cols, num_rows, decos, orients):
    return SingularGrid.build(num_cols, num_rows, decos, orients)


def cyclic_permutation(grid: SingularGrid, axis: str, side: str) -> SingularGrid:
    if axis not in ("col", "row") or side not in ("start", "end"):
        raise IllegalMove(f"bad cyclic permutation {axis}/{side}")
    count = grid.num_cols if axis == "col" else grid.num_rows
    moved = 0 if side == "start" else count - 1
    if grid.is_singular(axis, moved):
        raise IllegalMove(f"{axis} {moved} is singular; only regular RoCs move cyclically")
    shift = -1 if side == "start" else 1
    if axis == "col":
        return grid._shift(shift % count, 0).validate()
    return grid._shift(0, shift % count).validate()


def _spans_disjoint(a, b) -> bool:
    lo_a, hi_a = min(a), max(a)
    lo_b, hi_b = min(b), max(b)
    return hi_a < lo_b or hi_b < lo_a


def commutation(grid: SingularGrid, axis: str, index: int) -> SingularGrid:
    if axis == "row":
        return diagonal_flip(commutation(diagonal_flip(grid), "col", index))
    if not 0 <= index < grid.num_cols - 1:
        raise IllegalMove(f"no column pair at {index}")
    if grid.is_singular("col", index) or grid.is_singular("col", index + 1):
        raise IllegalMove("commutations act on regular RoCs only")
    a = [d.row for d in grid.column(index)]
    b = [d.row for d in grid.column(index + 1)]
    if not _spans_disjoint(a, b):
        raise IllegalMove(f"columns {index} and {index + 1} have interleaving or touching spans")
    swap = {index: index + 1, index + 1: index}
    decos = [Decoration(d.kind, swap.get(d.col, d.col), d.row) for d in grid.decorations]
    return _rebuild(grid, grid.num_cols, grid.num_rows, decos, dict(grid.orientations))


_CORNERS = {"SW": (0, 0), "SE": (1, 0), "NW": (0, 1), "NE": (1, 1)}


def stabilization(grid: SingularGrid, col: int, row: int, pattern: str) -> SingularGrid:
    """Split column ``col`` and row ``row`` in two around the decorated cell.

    In the new 2x2 block the corner named by ``pattern`` stays empty, the two
    corners next to it carry the cell's kind and the opposite corner the other
    kind.  The copies through the empty corner keep the old partners (and any
    singular status); the other two are new regular RoCs.
    """
    kind = grid.kind_at(col, row)
    if kind is None:
        raise IllegalMove(f"cell ({col}, {row}) is not decorated")
    if pattern not in _CORNERS:
        raise IllegalMove(f"unknown stabilization pattern {pattern!r}")
    ex, ey = _CORNERS[pattern]
    decos = []
    for d in grid.decorations:
        if d.col == col and d.row == row:
            continue
        x = d.col + 1 if d.col > col else d.col + ex if d.col == col else d.col
        y = d.row + 1 if d.row > row else d.row + ey if d.row == row else d.row
        decos.append(Decoration(d.kind, x, y))
    decos += [
        Decoration(kind, col + ex, row + 1 - ey),
        Decoration(kind, col + 1 - ex, row + ey),
        Decoration(_other(kind), col + 1 - ex, row + 1 - ey),
    ]
    orients = {}
    for (a, i), s in grid.orientations:
        at, keep = (col, ex) if a == "col" else (row, ey)
        orients[(a, i + 1 if i > at else i + keep if i == at else i)] = s
    return SingularGrid.build(grid.num_cols + 1, grid.num_rows + 1, decos, orients)


def destabilization(grid: SingularGrid, col: int, row: int) -> SingularGrid:
    """Inverse of :func:`stabilization` on the block with lower-left cell (col, row)."""
    if not (0 <= col < grid.num_cols - 1 and 0 <= row < grid.num_rows - 1):
        raise IllegalMove("block out of range")
    cells = {(dx, dy): grid.kind_at(col + dx, row + dy) for dx in (0, 1) for dy in (0, 1)}
    empty = [c for c, k in cells.items() if k is None]
    if len(empty) != 1:
        raise IllegalMove("a destabilization block holds exactly three decorations")
    ex, ey = empty[0]
    kind = cells[(ex, 1 - ey)]
    if cells[(1 - ex, ey)] != kind or cells[(1 - ex, 1 - ey)] != _other(kind):
        raise IllegalMove("block decorations do not form a stabilization pattern")
    inner_col, inner_row = col + 1 - ex, row + 1 - ey
    if grid.is_singular("col", inner_col) or grid.is_singular("row", inner_row):
        raise IllegalMove("a singular RoC would meet the block in two decorations")
    if len(grid.column(inner_col)) != 2 or len(grid.row(inner_row)) != 2:
        raise IllegalMove("inner RoCs carry decorations outside the block")
    decos = []
    for d in grid.decorations:
        if d.col == inner_col or d.row == inner_row:
            continue
        if d.col == col + ex and d.row == inner_row:
            continue
        decos.append(d)
    decos = [Decoration(d.kind, d.col - (d.col > inner_col), d.row - (d.row > inner_row)) for d in decos]
    decos.append(Decoration(kind, col, row))
    orients = {}
    for (a, i), s in grid.orientations:
        at = inner_col if a == "col" else inner_row
        orients[(a, i - (i > at))] = s
    return SingularGrid.build(grid.num_cols - 1, grid.num_rows - 1, decos, orients)


def _rotation_site(grid: SingularGrid, c: int):
    """Check the 3x4 pattern around singular column ``c``; return (r, lower_side).

    The column's decorations fill rows r..r+3, those rows are regular, and the
    regular neighbour columns each hold one decoration in the band: one at row
    r+1 and the other at row r+2.  ``lower_side`` is -1 when the row r+1 one is
    on the left.
    """
    if not grid.is_singular("col", c):
        raise IllegalMove(f"column {c} is not singular")
    if not 1 <= c <= grid.num_cols - 2:
        raise IllegalMove("rotation needs a column on each side")
    rows = sorted(d.row for d in grid.column(c))
    r = rows[0]
    if rows != list(range(r, r + 4)):
        raise IllegalMove("singular column decorations are not in consecutive rows")
    if any(grid.is_singular("row", y) for y in rows):
        raise IllegalMove("rotation band crosses a singular row")
    inner = {}
    for side in (-1, 1):
        cc = c + side
        if grid.is_singular("col", cc):
            raise IllegalMove("rotation neighbours must be regular")
        band = [d.row for d in grid.column(cc) if r <= d.row <= r + 3]
        if len(band) != 1 or band[0] not in (r + 1, r + 2):
            raise IllegalMove(f"column {cc} does not match the rotation pattern")
        inner[side] = band[0]
    if inner[-1] == inner[1]:
        raise IllegalMove("rotation neighbours share a row")
    return r, (-1 if inner[-1] == r + 1 else 1)


def rotate_column(grid: SingularGrid, c: int) -> SingularGrid:
    """Replace singular column ``c`` (3x4 pattern) by a singular row (4x3 pattern).

    The double point keeps its place in the picture: the columns c-1 and c+1
    become the outer columns of the new block, the rows r and r+3 its outer
    rows, and the two turning corners keep their lower/upper order.
    """
    r, lower_side = _rotation_site(grid, c)
    band = range(r, r + 4)
    col_map = lambda x: x if x < c else x + 1
    row_map = lambda y: y if y < r else y - 1
    decos, vends, hends = [], {}, {}
    for d in grid.decorations:
        if c - 1 <= d.col <= c + 1 and d.row in band:
            continue
        if d.col in (c - 1, c + 1):
            vends[d.col] = d
        elif d.row in (r, r + 3) and d.row in band:
            hends[d.row] = d
        else:
            decos.append(Decoration(d.kind, col_map(d.col) if d.col > c + 1 else d.col, row_map(d.row) if d.row > r + 3 else d.row))
    left, right = c - 1, c + 2
    decos.append(Decoration(vends[c - 1].kind, left, row_map(vends[c - 1].row) if vends[c - 1].row > r + 3 else vends[c - 1].row))
    decos.append(Decoration(vends[c + 1].kind, right, row_map(vends[c + 1].row) if vends[c + 1].row > r + 3 else vends[c + 1].row))
    sing = {left: _other(vends[c - 1].kind), right: _other(vends[c + 1].kind)}
    # the bottom outer row turns at the inner column on the side of the old row r+1 corner
    inner_for = {r: c if lower_side < 0 else c + 1, r + 3: c + 1 if lower_side < 0 else c}
    for y, new_y in ((r, r), (r + 3, r + 2)):
        h = hends[y]
        decos.append(Decoration(h.kind, col_map(h.col) if h.col > c + 1 else h.col, new_y))
        ic = inner_for[y]
        decos.append(Decoration(_other(h.kind), ic, new_y))
        sing[ic] = h.kind
    for x in range(c - 1, c + 3):
        decos.append(Decoration(sing[x], x, r + 1))
    orients = {}
    for (a, i), s in grid.orientations:
        if (a, i) == ("col", c):
            continue
        orients[(a, (i + 1 if i > c else i) if a == "col" else row_map(i) if i > r + 3 else i)] = s
    orients[("row", r + 1)] = ROTATION_FLAG[lower_side] * grid.orientation(("col", c))
    return SingularGrid.build(grid.num_cols + 1, grid.num_rows - 1, decos, orients)


def rotate_row(grid: SingularGrid, r: int) -> SingularGrid:
    """Inverse of :func:`rotate_column`."""
    if not grid.is_singular("row", r):
        raise IllegalMove(f"row {r} is not singular")
    cols = sorted(d.col for d in grid.row(r))
    c0 = cols[0]
    if cols != list(range(c0, c0 + 4)) or not 1 <= r <= grid.num_rows - 2:
        raise IllegalMove("row does not match the rotation pattern")
    # rebuild the column picture and check it maps back exactly
    for lower_side in (-1, 1):
        cand = _unrotate(grid, r, c0, lower_side)
        if cand is not None and rotate_column(cand, c0 + 1) == grid:
            return cand
    raise IllegalMove("row does not match the rotation pattern")


def _unrotate(grid: SingularGrid, r: int, c0: int, lower_side: int):
    c = c0 + 1
    if any(grid.is_singular("col", x) for x in range(c0, c0 + 4)):
        return None
    if grid.is_singular("row", r - 1) or grid.is_singular("row", r + 1):
        return None
    below = [d for d in grid.row(r - 1) if c0 <= d.col < c0 + 4]
    above = [d for d in grid.row(r + 1) if c0 <= d.col < c0 + 4]
    if len(below) != 1 or len(above) != 1:
        return None
    lo_in, hi_in = below[0], above[0]
    if {lo_in.col, hi_in.col} != {c, c + 1}:
        return None
    if (lo_in.col == c) != (lower_side < 0):
        return None
    lo_out = [d for d in grid.row(r - 1) if d is not lo_in and d != lo_in][0]
    hi_out = [d for d in grid.row(r + 1) if d != hi_in][0]
    outer = {}
    for x in (c0, c0 + 3):
        ext = [d for d in grid.column(x) if d.row != r]
        if len(ext) != 1:
            return None
        outer[x] = ext[0]
    col_map = lambda x: x if x <= c0 else x - 1
    row_map = lambda y: y if y < r - 1 else y + 1
    band0 = r - 1
    decos = []
    skip_cols = set(range(c0, c0 + 4))
    for d in grid.decorations:
        if d.col in skip_cols or d.row in (r - 1, r, r + 1):
            continue
        decos.append(Decoration(d.kind, d.col - 1 if d.col > c0 + 3 else d.col, d.row + 1 if d.row > r + 1 else d.row))
    # column picture: rows band0..band0+3, columns c0 (left), c0+1 (singular), c0+2 (right)
    left_row = band0 + (1 if lower_side < 0 else 2)
    right_row = band0 + (2 if lower_side < 0 else 1)
    fix = lambda y: y + 1 if y > r + 1 else y
    decos.append(Decoration(outer[c0].kind, c0, fix(outer[c0].row)))
    decos.append(Decoration(outer[c0 + 3].kind, c0 + 2, fix(outer[c0 + 3].row)))
    decos.append(Decoration(_other(outer[c0].kind), c0, left_row))
    decos.append(Decoration(_other(outer[c0 + 3].kind), c0 + 2, right_row))
    decos.append(Decoration(lo_out.kind, lo_out.col - 1 if lo_out.col > c0 + 3 else lo_out.col, band0))
    decos.append(Decoration(hi_out.kind, hi_out.col - 1 if hi_out.col > c0 + 3 else hi_out.col, band0 + 3))
    sing = {
        band0: _other(lo_out.kind),
        band0 + 3: _other(hi_out.kind),
        left_row: outer[c0].kind,
        right_row: outer[c0 + 3].kind,
    }
    for y, k in sing.items():
        decos.append(Decoration(k, c, y))
    orients = {}
    for (a, i), s in grid.orientations:
        if (a, i) == ("row", r):
            continue
        orients[(a, (i - 1 if i > c0 + 3 else i) if a == "col" else (i + 1 if i > r + 1 else i))] = s
    orients[("col", c)] = ROTATION_FLAG[lower_side] * grid.orientation(("row", r))
    try:
        return SingularGrid.build(grid.num_cols - 1, grid.num_rows + 1, decos, orients)
    except GridError:
        return None


def apply_move(grid: SingularGrid, move) -> SingularGrid:
    """Apply an elementary move, raising IllegalMove when its precondition fails."""
    if isinstance(move, CyclicPermutation):
        return cyclic_permutation(grid, move.axis, move.side)
    if isinstance(move, Commutation):
        return commutation(grid, move.axis, move.index)
    if isinstance(move, Stabilization):
        return stabilization(grid, move.col, move.row, move.pattern)
    if isinstance(move, Destabilization):
        return destabilization(grid, move.col, move.row)
    if isinstance(move, Rotation):
        if move.axis == "col":
            return rotate_column(grid, move.index)
        return rotate_row(grid, move.index)
    raise TypeError(f"not an elementary move: {move!r}")


# ---------------------------------------------------------------------------
# text form, one move per line:
#   cyclic col|row start|end     commute col|row <i>
#   stabilize <col> <row> NE|NW|SE|SW     destabilize <col> <row>
#   rotate col|row <i>

def format_move(move) -> str:
    if isinstance(move, CyclicPermutation):
        return f"cyclic {move.axis} {move.side}"
    if isinstance(move, Commutation):
        return f"commute {move.axis} {move.index}"
    if isinstance(move, Stabilization):
        return f"stabilize {move.col} {move.row} {move.pattern}"
    if isinstance(move, Destabilization):
        return f"destabilize {move.col} {move.row}"
    if isinstance(move, Rotation):
        return f"rotate {move.axis} {move.index}"
    raise TypeError(f"not an elementary move: {move!r}")


def parse_move(line: str):
    parts = line.split()
    try:
        op, args = parts[0], parts[1:]
        if op == "cyclic" and len(args) == 2:
            return CyclicPermutation(side=args[1], axis=args[0])
        if op == "commute" and len(args) == 2:
            return Commutation(args[0], int(args[1]))
        if op == "stabilize" and len(args) == 3:
            return Stabilization(int(args[0]), int(args[1]), args[2])
        if op == "destabilize" and len(args) == 2:
            return Destabilization(int(args[0]), int(args[1]))
        if op == "rotate" and len(args) == 2:
            return Rotation(args[0], int(args[1]))
    except (IndexError, ValueError):
        pass
    raise GridSyntaxError(f"bad move line: {line!r}")


def parse_script(text: str) -> list:
    moves = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            moves.append(parse_move(line))
    return moves


def legal_moves(grid: SingularGrid, max_size: int | None = None) -> list:
    """Every legal elementary move from ``grid``; stabilizations only below ``max_size``."""
    out = []
    for axis, count in (("col", grid.num_cols), ("row", grid.num_rows)):
        for side, idx in (("start", 0), ("end", count - 1)):
            if not grid.is_singular(axis, idx):
                out.append(CyclicPermutation(side, axis))
        for i in range(count - 1):
            try:
                commutation(grid, axis, i)
            except IllegalMove:
                continue
            out.append(Commutation(axis, i))
        for i in range(count):
            if grid.is_singular(axis, i):
                try:
                    apply_move(grid, Rotation(axis, i))
                except IllegalMove:
                    continue
                out.append(Rotation(axis, i))
    for c in range(grid.num_cols - 1):
        for r in range(grid.num_rows - 1):
            try:
                destabilization(grid, c, r)
            except IllegalMove:
                continue
            out.append(Destabilization(c, r))
    if max_size is None or grid.size < max_size:
        for d in grid.decorations:
            for p in _CORNERS:
                out.append(Stabilization(d.col, d.row, p))
    return out
