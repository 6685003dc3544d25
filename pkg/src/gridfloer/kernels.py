"""Backend selection for the hot loops: compiled extension when built, else pure Python."""

from __future__ import annotations

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

HAVE_EXTENSION = _ckernels is not None


def default_backend() -> str:
    return "cython" if HAVE_EXTENSION else "python"


def assemble(grid, cube, backend=None):
    backend = backend or default_backend()
    if backend == "cython":
        if not HAVE_EXTENSION:
            raise RuntimeError("compiled kernels are not available")
        from .complex import geometry
        from ._ckernels_glue import assemble_cython

        return assemble_cython(grid, cube, geometry(cube))
    from .complex import assemble_python

    return assemble_python(grid, cube)


# Above this many columns the dense word-array elimination loses to pivot
# reduction on int bitsets: grid differentials have a handful of entries per
# row and stay sparse under elimination.
DENSE_WIDTH_LIMIT = 4096


def rank(rows, width, backend=None):
    """F2 rank of a block given as int bitset rows over ``width`` columns."""
    backend = backend or default_backend()
    if backend == "cython" and HAVE_EXTENSION and width <= DENSE_WIDTH_LIMIT:
        return _ckernels.gf2_rank(rows, width)
    from .homology import gf2_rank

    return gf2_rank(rows)
