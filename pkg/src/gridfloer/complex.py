"""Generators, gradings and grid polygons of the cube-of-resolutions complex.

A generator is a resolution index together with a permutation ``perm`` of the
fine lattice: the dot on vertical line ``i`` sits on horizontal line
``perm[i]``.  A grid polygon is a torus rectangle whose lower-left and
upper-right corners are dots of the source generator; an edge lying on the
middle line of a 0-resolved singular RoC may bend at that RoC's peak, running
along ``alpha`` up to the peak and along ``beta`` after it.  The target then
has that RoC 1-resolved.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import permutations, product

from .resolution_cube import BAND_OFFSET, HIGH, LOW, SCALE, ResolutionCube, build_cube
from .grid_model import SingularGrid, count_components

DEFAULT_BUDGET = 50_000_000

# edge modes
ALPHA, BETA, PEAK = 0, 1, 2


class ResourceLimit(Exception):
    pass


def budget_from_env(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("GRIDFLOER_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def check_budget(grid: SingularGrid, budget: int | None = None) -> int:
    total = math.factorial(grid.size) * 2 ** grid.num_singular
    limit = budget_from_env(budget)
    if total > limit:
        raise ResourceLimit(f"{total} generators exceed the budget of {limit}")
    return total


# ---------------------------------------------------------------------------
# gradings

def _pair_count(a_pts, b_pts) -> int:
    """Ordered pairs (a, b) with b strictly north-east or south-west of a."""
    c = 0
    for ax, ay in a_pts:
        for bx, by in b_pts:
            if (bx - ax) * (by - ay) > 0:
                c += 1
    return c


def mgrading(points, decos) -> int:
    """M_B(A) = J(A,A) - 2 J(A,B) + J(B,B) + 1 with J half the pair count.

    Both arguments hold doubled coordinates: dots at even lattice points and
    decoration centres at odd ones.
    """
    twice = _pair_count(points, points) - 2 * _pair_count(points, decos) + _pair_count(decos, decos)
    return twice // 2 + 1


def maslov(perm, o_cells) -> int:
    pts = [(2 * i, 2 * j) for i, j in enumerate(perm)]
    return mgrading(pts, [(2 * c + 1, 2 * r + 1) for c, r in o_cells])


def alexander2(perm, o_cells, x_cells, n: int, components: int) -> int:
    """Twice the Alexander grading."""
    pts = [(2 * i, 2 * j) for i, j in enumerate(perm)]
    mo = mgrading(pts, [(2 * c + 1, 2 * r + 1) for c, r in o_cells])
    mx = mgrading(pts, [(2 * c + 1, 2 * r + 1) for c, r in x_cells])
    return mo - mx - (n - components)


# ---------------------------------------------------------------------------
# geometry tables shared by the polygon kernels

@dataclass(frozen=True)
class Geometry:
    n: int
    k: int
    vline: tuple[int, ...]  # singular line index on each vertical line, -1 if regular
    hline: tuple[int, ...]
    peak_pos: tuple[int, ...]  # scaled coordinate of each selected peak
    deco_kind: tuple[int, ...]  # 0 for O, 1 for X
    deco_x: tuple[int, ...]
    deco_y: tuple[int, ...]
    deco_cband: tuple[int, ...]  # singular column line index or -1
    deco_cside: tuple[int, ...]
    deco_rband: tuple[int, ...]
    deco_rside: tuple[int, ...]


def geometry(cube: ResolutionCube) -> Geometry:
    n = cube.n
    vline = [-1] * n
    hline = [-1] * n
    for ln in cube.lines:
        (vline if ln.axis == "col" else hline)[ln.middle % n] = ln.index
    peaks = [cube.peak(ln).position for ln in cube.lines]
    kinds, xs, ys, cb, cs, rb, rs = [], [], [], [], [], [], []
    for kind, X, Y, cband, rband in cube.decoration_points():
        kinds.append(0 if kind == "O" else 1)
        xs.append(X)
        ys.append(Y)
        cb.append(cband[0] if cband else -1)
        cs.append(cband[1] if cband else 0)
        rb.append(rband[0] if rband else -1)
        rs.append(rband[1] if rband else 0)
    return Geometry(n, cube.k, tuple(vline), tuple(hline), tuple(peaks), tuple(kinds),
                    tuple(xs), tuple(ys), tuple(cb), tuple(cs), tuple(rb), tuple(rs))


def _inside_edge(side: int, mode: int, before: bool, low_edge: bool) -> bool:
    """Is a band decoration on the interior side of an edge on its middle line?

    ``low_edge`` is True for the left and bottom edges (interior on the high
    side).  ``before`` says whether the decoration precedes the peak along the
    edge.  Left/bottom edges run alpha then beta; right/top edges run beta then
    alpha in the same increasing direction.
    """
    if mode == PEAK:
        if low_edge:
            mode = ALPHA if before else BETA
        else:
            mode = BETA if before else ALPHA
    on_alpha_high = (side == HIGH)
    if mode == ALPHA:
        return on_alpha_high if low_edge else not on_alpha_high
    # beta passes beyond the decoration: the sides swap
    return (not on_alpha_high) if low_edge else on_alpha_high


def decorations_inside(geo: Geometry, vL, vR, hB, hT, modes):
    """Return (#O, #X) inside a polygon with edge modes (left, right, bottom, top)."""
    n = geo.n
    N = SCALE * n
    w = (vR - vL) % n
    h = (hT - hB) % n
    x0 = SCALE * vL
    y0 = SCALE * hB
    ml, mr, mb, mt = modes
    lv, rv, bh, th = geo.vline[vL], geo.vline[vR], geo.hline[hB], geo.hline[hT]
    counts = [0, 0]
    for d in range(len(geo.deco_kind)):
        X = geo.deco_x[d]
        Y = geo.deco_y[d]
        xo = (X - x0) % N
        yo = (Y - y0) % N
        cb = geo.deco_cband[d]
        rb = geo.deco_rband[d]
        on_l = cb >= 0 and cb == lv
        on_r = cb >= 0 and cb == rv
        on_b = rb >= 0 and rb == bh
        on_t = rb >= 0 and rb == th
        # a decoration in the bands of two edges sits at their common corner,
        # which peaks avoid, so it lies at the start or the end of both edges
        if on_l or on_r:
            if on_b:
                before = True
            elif on_t:
                before = False
            else:
                before = yo < (geo.peak_pos[cb] - y0) % N
            ins_x = _inside_edge(geo.deco_cside[d], ml if on_l else mr, before, on_l)
        else:
            ins_x = 0 < xo < SCALE * w
        if not ins_x:
            continue
        if on_b or on_t:
            if on_l:
                before = True
            elif on_r:
                before = False
            else:
                before = xo < (geo.peak_pos[rb] - x0) % N
            ins_y = _inside_edge(geo.deco_rside[d], mb if on_b else mt, before, on_b)
        else:
            ins_y = 0 < yo < SCALE * h
        if ins_y:
            counts[geo.deco_kind[d]] += 1
    return counts[0], counts[1]


def _edge_options(geo: Geometry, line: int, bits: int, span: int, base: int):
    """Edge modes available on a line: (mode, flipped_bit_mask)."""
    if line < 0:
        return ((ALPHA, 0),)
    if (bits >> line) & 1:
        return ((BETA, 0),)
    N = SCALE * geo.n
    opts = [(ALPHA, 0)]
    off = (geo.peak_pos[line] - SCALE * base) % N
    if 0 < off < SCALE * span:
        opts.append((PEAK, 1 << line))
    return tuple(opts)


def polygons_from(geo: Geometry, bits: int, perm, decorated: bool = False):
    """Yield (vL, vR, modes, new_bits, target_perm, nO, nX) for empty polygons from a generator.

    With ``decorated`` False only decoration-free polygons are produced.
    """
    n = geo.n
    for vL in range(n):
        hB = perm[vL]
        for vR in range(n):
            if vR == vL:
                continue
            hT = perm[vR]
            w = (vR - vL) % n
            h = (hT - hB) % n
            empty = True
            for t in range(1, w):
                if 0 < (perm[(vL + t) % n] - hB) % n < h:
                    empty = False
                    break
            if not empty:
                continue
            lefts = _edge_options(geo, geo.vline[vL], bits, h, hB)
            rights = _edge_options(geo, geo.vline[vR], bits, h, hB)
            bottoms = _edge_options(geo, geo.hline[hB], bits, w, vL)
            tops = _edge_options(geo, geo.hline[hT], bits, w, vL)
            for (ml, fl), (mr, fr), (mb, fb), (mt, ft) in product(lefts, rights, bottoms, tops):
                modes = (ml, mr, mb, mt)
                no, nx = decorations_inside(geo, vL, vR, hB, hT, modes)
                if not decorated and (no or nx):
                    continue
                target = list(perm)
                target[vL], target[vR] = hT, hB
                yield vL, vR, modes, bits | fl | fr | fb | ft, tuple(target), no, nx


# ---------------------------------------------------------------------------
# the assembled tilde complex

@dataclass
class CubeComplex:
    """Tilde-flavour complex: generators with gradings and the F2 differential."""

    grid: SingularGrid
    cube: ResolutionCube
    n: int
    k: int
    components: int
    perms: list
    maslov: list  # per generator, cube shift included
    alex2: list  # per generator, twice the Alexander grading
    desing: list
    edges: dict  # source index -> sorted list of target indices (odd counts)

    def generator(self, idx):
        nperm = len(self.perms)
        return idx // nperm, self.perms[idx % nperm]

    def __len__(self):
        return len(self.maslov)


def cube_shift(k: int, weight: int) -> int:
    """Maslov shift of a resolution with ``weight`` 1-resolved RoCs out of ``k``.

    The summand of resolution I is shifted down by #I; the constant k puts the
    all-zero resolution at the standard normalization of the singular values.
    """
    return k - weight


def resolution_gradings(cube: ResolutionCube, bits_tuple, perms, components):
    cells = cube.fine_cells(bits_tuple)
    o_cells = [(c, r) for kind, c, r in cells if kind == "O"]
    x_cells = [(c, r) for kind, c, r in cells if kind == "X"]
    n = cube.n
    o2 = [(2 * c + 1, 2 * r + 1) for c, r in o_cells]
    x2 = [(2 * c + 1, 2 * r + 1) for c, r in x_cells]
    joo = _pair_count(o2, o2)
    jxx = _pair_count(x2, x2)
    ms, as2 = [], []
    for perm in perms:
        pts = [(2 * i, 2 * j) for i, j in enumerate(perm)]
        jpp = _pair_count(pts, pts)
        mo = (jpp - 2 * _pair_count(pts, o2) + joo) // 2 + 1
        mx = (jpp - 2 * _pair_count(pts, x2) + jxx) // 2 + 1
        ms.append(mo)
        as2.append(mo - mx - (n - components))
    return ms, as2


def build_complex(grid: SingularGrid, budget: int | None = None, cube: ResolutionCube | None = None,
                  backend: str | None = None) -> CubeComplex:
    check_budget(grid, budget)
    cube = cube or build_cube(grid)
    from . import kernels

    return kernels.assemble(grid, cube, backend=backend)


def assemble_python(grid: SingularGrid, cube: ResolutionCube) -> CubeComplex:
    n, k = cube.n, cube.k
    ell = count_components(grid)
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    nperm = len(perms)
    geo = geometry(cube)
    maslovs, alex, desing = [], [], []
    for b in range(2 ** k):
        bits_tuple = tuple((b >> i) & 1 for i in range(k))
        ms, as2 = resolution_gradings(cube, bits_tuple, perms, ell)
        w = sum(bits_tuple)
        maslovs.extend(m + cube_shift(k, w) for m in ms)
        alex.extend(as2)
        desing.extend([w] * nperm)
    edges = {}
    for b in range(2 ** k):
        for pi, perm in enumerate(perms):
            src = b * nperm + pi
            odd = set()
            for *_, nb, target, _, _ in polygons_from(geo, b, perm):
                odd ^= {nb * nperm + index[target]}
            if odd:
                edges[src] = sorted(odd)
    return CubeComplex(grid, cube, n, k, ell, perms, maslovs, alex, desing, edges)
