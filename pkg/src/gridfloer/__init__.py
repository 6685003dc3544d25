"""Singular grid diagrams and their combinatorial link Floer homology over F2."""

from .complex import ResourceLimit, build_complex
from .grid_model import (
    Decoration,
    GridError,
    GridSyntaxError,
    IllegalMove,
    PreconditionError,
    SingularGrid,
    ValidationError,
    count_components,
    load_grid,
    parse_grid,
    serialize_grid,
)
from .homology import NonDivisible

__version__ = "0.1.0"
