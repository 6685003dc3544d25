"""Assemble a CubeComplex with the compiled kernels."""

from __future__ import annotations

from itertools import permutations

from . import _ckernels
from .complex import CubeComplex, Geometry, cube_shift
from .resolution_cube import SCALE, ResolutionCube
from .grid_model import SingularGrid, count_components


def assemble_cython(grid: SingularGrid, cube: ResolutionCube, geo: Geometry) -> CubeComplex:
    n, k = cube.n, cube.k
    ell = count_components(grid)
    perms = list(permutations(range(n)))
    nperm = len(perms)
    maslovs, alex, desing = [], [], []
    for b in range(2 ** k):
        bits = tuple((b >> i) & 1 for i in range(k))
        cells = cube.fine_cells(bits)
        o2 = [(2 * c + 1, 2 * r + 1) for kind, c, r in cells if kind == "O"]
        x2 = [(2 * c + 1, 2 * r + 1) for kind, c, r in cells if kind == "X"]
        ms, as2 = _ckernels.gradings(perms, n, o2, x2, ell)
        w = sum(bits)
        maslovs.extend(m + cube_shift(k, w) for m in ms)
        alex.extend(as2)
        desing.extend([w] * nperm)
    edges = _ckernels.differential(
        perms, n, k, geo.vline, geo.hline, geo.peak_pos, geo.deco_kind, geo.deco_x, geo.deco_y,
        geo.deco_cband, geo.deco_cside, geo.deco_rband, geo.deco_rside, SCALE,
    )
    return CubeComplex(grid, cube, n, k, ell, perms, maslovs, alex, desing, edges)
