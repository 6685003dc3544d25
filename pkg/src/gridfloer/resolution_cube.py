"""Resolutions of singular RoCs, winding arcs and peak selection.

Everything lives in one fine lattice of size ``n``: a singular column is split
into two fine columns whose shared vertical line (the *middle line*) carries the
winding arcs; singular rows likewise.  The 0-resolution arc ``alpha`` is the
straight middle line.  ``beta`` weaves around the four decorations, passing each
on the far side, and meets ``alpha`` once in each gap between consecutive
decorations.

Geometry uses integer coordinates scaled by ``SCALE``: grid line ``i`` sits at
``SCALE * i``, a decoration of a regular line at the cell centre, and a
decoration of a singular band at ``middle +/- BAND_OFFSET``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .grid_model import Decoration, SingularGrid, diagonal_flip

SCALE = 16
BAND_OFFSET = 4

# Side of a decoration relative to the middle line of its band.
LOW, HIGH = 0, 1

# Default peak binding: orientation + selects the admissible crossing whose
# lower (resp. left) decoration has this kind.  Fixed by calibration on the
# trefoil singularizations.
PLUS_KIND = "O"

# Rows read the binding transposed and with the opposite sign: the row and
# column conventions are quarter-turns of each other, not reflections.
ROW_SIGN = -1

# Crossing placement inside each gap: "low" puts it just past the earlier
# decoration, "high" just before the later one.  Both are isotopic.
PLACEMENT = "low"


@dataclass(frozen=True)
class Crossing:
    gap: int  # crossing between decoration gap and gap+1 (mod 4)
    position: int  # scaled coordinate along the RoC
    sides: tuple[int, int]  # beta side before and after the crossing
    lower_kind: str  # kind of the decoration just before the crossing

    @property
    def admissible(self) -> bool:
        return self.sides == (LOW, HIGH)


@dataclass(frozen=True)
class SingularLine:
    """A singular RoC expanded into the fine lattice."""

    index: int  # position among the grid's singular RoCs (bit index)
    axis: str  # "col" or "row"
    roc: int  # index in singular-grid coordinates
    middle: int  # fine index of the middle line
    orientation: int
    decorations: tuple  # ((kind, along_fine_cell), ...) in increasing order
    sides0: tuple[int, ...]  # 0-resolution sides of the four decorations
    crossings: tuple[Crossing, ...]

    def sides(self, bit: int) -> tuple[int, ...]:
        return self.sides0 if bit == 0 else tuple(1 - s for s in self.sides0)


def zero_sides(kinds) -> tuple[int, ...]:
    """0-resolution sides (bottom-to-top or left-to-right) of a singular RoC.

    Same kinds on the two topmost (rightmost) decorations: negative slope, so
    the topmost goes to the low side; otherwise the positive slope.
    """
    if kinds[2] == kinds[3]:
        return (HIGH, LOW, HIGH, LOW)
    return (LOW, HIGH, LOW, HIGH)


def fine_maps(grid: SingularGrid):
    """Maps from singular-grid column/row indices to their first fine index."""
    out = {}
    for axis, count in (("col", grid.num_cols), ("row", grid.num_rows)):
        mapping, f = [], 0
        for idx in range(count):
            mapping.append(f)
            f += 2 if grid.is_singular(axis, idx) else 1
        out[axis] = mapping
    return out["col"], out["row"]


@dataclass(frozen=True)
class ResolutionCube:
    grid: SingularGrid
    n: int
    lines: tuple[SingularLine, ...]
    col_map: tuple[int, ...]
    row_map: tuple[int, ...]
    plus_kind: str = PLUS_KIND

    @property
    def k(self) -> int:
        return len(self.lines)

    def indices(self):
        return list(product((0, 1), repeat=self.k))

    def line_for(self, axis: str, middle: int) -> SingularLine | None:
        for ln in self.lines:
            if ln.axis == axis and ln.middle == middle:
                return ln
        return None

    # -- resolved grids ------------------------------------------------------
    def resolve(self, bits) -> tuple[list[int], list[int]]:
        """Fine regular grid for a resolution: (o_row, x_row) indexed by fine column."""
        bits = tuple(bits)
        if len(bits) != self.k:
            raise ValueError(f"resolution index needs {self.k} bits")
        return _cells_to_perms(self.fine_cells(bits), self.n)

    def fine_cells(self, bits) -> list[tuple[str, int, int]]:
        """(kind, fine_col, fine_row) of every decoration in a resolution."""
        bits = tuple(bits)
        side = {}
        for ln in self.lines:
            for (kind, along), s in zip(ln.decorations, ln.sides(bits[ln.index])):
                side[(ln.axis, ln.roc, along)] = s
        cells = []
        for d in self.grid.decorations:
            fc = self.col_map[d.col]
            fr = self.row_map[d.row]
            if self.grid.is_singular("col", d.col):
                fc += side[("col", d.col, d.row)]
            if self.grid.is_singular("row", d.row):
                fr += side[("row", d.row, d.col)]
            cells.append((d.kind, fc, fr))
        return cells

    def decoration_points(self) -> list[tuple[str, int, int, object, object]]:
        """Scaled positions in the alpha frame, plus band membership.

        Each entry is (kind, X, Y, col_band, row_band) where a band entry is
        ``(line_index, side)`` or None.
        """
        pts = []
        col_lines = {ln.roc: ln for ln in self.lines if ln.axis == "col"}
        row_lines = {ln.roc: ln for ln in self.lines if ln.axis == "row"}
        side = {}
        for ln in self.lines:
            for (kind, along), s in zip(ln.decorations, ln.sides(0)):
                side[(ln.axis, ln.roc, along)] = s
        for d in self.grid.decorations:
            cb = rb = None
            if d.col in col_lines:
                ln = col_lines[d.col]
                s = side[("col", d.col, d.row)]
                X = SCALE * ln.middle + (BAND_OFFSET if s == HIGH else -BAND_OFFSET)
                cb = (ln.index, s)
            else:
                X = SCALE * self.col_map[d.col] + SCALE // 2
            if d.row in row_lines:
                ln = row_lines[d.row]
                s = side[("row", d.row, d.col)]
                Y = SCALE * ln.middle + (BAND_OFFSET if s == HIGH else -BAND_OFFSET)
                rb = (ln.index, s)
            else:
                Y = SCALE * self.row_map[d.row] + SCALE // 2
            pts.append((d.kind, X, Y, cb, rb))
        return pts

    # -- peaks -----------------------------------------------------------------
    def peak(self, line: SingularLine, orientation: int | None = None) -> Crossing:
        o = line.orientation if orientation is None else orientation
        if line.axis == "row":
            o *= ROW_SIGN
        return select_peak(line, o, self.plus_kind)

    def peaks(self) -> tuple[Crossing, ...]:
        return tuple(self.peak(ln) for ln in self.lines)


def select_peak(line: SingularLine, orientation: int, plus_kind: str = PLUS_KIND) -> Crossing:
    candidates = [c for c in line.crossings if c.admissible]
    want = plus_kind if orientation > 0 else ("X" if plus_kind == "O" else "O")
    for c in candidates:
        if c.lower_kind == want:
            return c
    raise AssertionError("singular RoC without an admissible crossing")


def _cells_to_perms(cells, n):
    o_row = [None] * n
    x_row = [None] * n
    for kind, fc, fr in cells:
        (o_row if kind == "O" else x_row)[fc] = fr
    return o_row, x_row


def build_cube(grid: SingularGrid, plus_kind: str | None = None,
               placement: str | None = None) -> ResolutionCube:
    placement = placement or PLACEMENT
    n = grid.size
    col_map, row_map = fine_maps(grid)
    lines = []
    for index, ((axis, roc), orient) in enumerate(grid.orientations):
        decos = grid.line(axis, roc)
        kinds = [d.kind for d in decos]
        other_map = row_map if axis == "col" else col_map
        other_axis = "row" if axis == "col" else "col"
        along = [d.row if axis == "col" else d.col for d in decos]
        sides0 = zero_sides(kinds)
        # scaled coordinate of each decoration along the RoC
        pos, corner = [], []
        for a in along:
            f = other_map[a]
            if grid.is_singular(other_axis, a):
                # decoration sits in a crossing band; use its 0-resolution side there
                other = grid.line(other_axis, a)
                okinds = [d.kind for d in other]
                oalong = [d.col if axis == "col" else d.row for d in other]
                s = zero_sides(okinds)[oalong.index(roc)]
                pos.append(SCALE * (f + 1) + (BAND_OFFSET if s == HIGH else -BAND_OFFSET))
                corner.append(SCALE * (f + 1))
            else:
                pos.append(SCALE * f + SCALE // 2)
                corner.append(None)
        crossings = []
        for g in range(4):
            h = (g + 1) % 4
            # keep crossings out of the other band so both beta arcs run straight
            # through the corner square and meet once
            if placement == "low":
                p = pos[g] + 1 if corner[g] is None else corner[g] + SCALE // 2 + 1
            else:
                p = pos[h] - 1 if corner[h] is None else corner[h] - SCALE // 2 - 1
            crossings.append(Crossing(g, p % (SCALE * n), (sides0[g], sides0[h]), kinds[g]))
        middle = (col_map if axis == "col" else row_map)[roc] + 1
        lines.append(SingularLine(index, axis, roc, middle, orient,
                                  tuple(zip(kinds, along)), sides0, tuple(crossings)))
    return ResolutionCube(grid, n, tuple(lines), tuple(col_map), tuple(row_map),
                          plus_kind or PLUS_KIND)


def resolve(grid: SingularGrid, bits) -> SingularGrid:
    """The regular fine grid of one resolution, as a SingularGrid with no singular RoC."""
    cube = build_cube(grid)
    o_row, x_row = cube.resolve(bits)
    return SingularGrid.from_permutations(o_row, x_row)


def resolve_roc(grid: SingularGrid, axis: str, roc: int, bit: int) -> SingularGrid:
    """Split one singular RoC into two adjacent regular ones; the others stay singular."""
    if axis == "row":
        return diagonal_flip(resolve_roc(diagonal_flip(grid), "col", roc, bit))
    if not grid.is_singular("col", roc):
        raise ValueError(f"column {roc} is not singular")
    decos = grid.column(roc)
    sides = zero_sides([d.kind for d in decos])
    if bit:
        sides = tuple(1 - s for s in sides)
    side_of = {(d.col, d.row): s for d, s in zip(decos, sides)}
    out = []
    for d in grid.decorations:
        if d.col == roc:
            out.append(Decoration(d.kind, roc + side_of[(d.col, d.row)], d.row))
        else:
            out.append(Decoration(d.kind, d.col + 1 if d.col > roc else d.col, d.row))
    orients = {}
    for (a, i), s in grid.orientations:
        if (a, i) != ("col", roc):
            orients[(a, i + 1 if a == "col" and i > roc else i)] = s
    return SingularGrid.build(grid.num_cols + 1, grid.num_rows, out, orients)
