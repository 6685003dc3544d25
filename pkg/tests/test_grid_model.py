import pytest
from helpers import corpus, corpus_names

from gridfloer.grid_model import (
    GridSyntaxError,
    PreconditionError,
    SingularGrid,
    ValidationError,
    count_components,
    decoration_swap,
    diagonal_flip,
    merge_columns,
    merge_rows,
    parse_grid,
    quarter_turn,
    serialize_grid,
    transform,
)

TREFOIL = """grid v1
cols 5
rows 5
O 0 0
X 0 3
O 1 1
X 1 4
O 2 2
X 2 0
O 3 3
X 3 1
O 4 4
X 4 2
"""


def test_parse_and_shape():
    g = parse_grid(TREFOIL)
    assert (g.num_cols, g.num_rows, g.size, g.num_singular) == (5, 5, 5, 0)
    assert g.kind_at(0, 3) == "X" and g.kind_at(0, 1) is None


def test_comments_and_blank_lines():
    g = parse_grid("# a comment\n\ngrid v1  # trailing\ncols 2\nrows 2\nO 0 0\nX 0 1\nX 1 0\nO 1 1\n")
    assert g.size == 2


@pytest.mark.parametrize("name", corpus_names())
def test_serialize_round_trip(name):
    g = corpus(name)
    assert parse_grid(serialize_grid(g)) == g


@pytest.mark.parametrize(
    "text, rule",
    [
        ("cols 1\nrows 1\n", None),
        ("grid v1\ncols 2\nrows 2\nO 0 0\nX 0 1\nX 1 0\n", "count"),
        ("grid v1\ncols 2\nrows 2\nO 0 0\nO 0 0\nX 1 0\nX 1 1\n", "cell"),
        ("grid v1\ncols 2\nrows 2\nO 0 0\nX 0 1\nX 1 0\nO 1 5\n", "bounds"),
        ("grid v1\ncols 2\nrows 2\nO 0 0\nX 0 1\nX 1 0\nO 1 1\nsing col 7 +\n", "singular"),
    ],
)
def test_invalid_files(text, rule):
    with pytest.raises((GridSyntaxError, ValidationError)) as info:
        parse_grid(text)
    if rule is not None:
        assert info.value.rule == rule


def test_syntax_errors():
    for text in ("grid v2\n", "grid v1\ncols x\n", "grid v1\ncols 2\nrows 2\nY 0 0\n",
                 "grid v1\ncols 2\nrows 2\nsing col 0 *\n"):
        with pytest.raises(GridSyntaxError):
            parse_grid(text)


def test_singular_pattern_rejected():
    # a singular column reading O X O X is not a valid double point
    text = "grid v1\ncols 1\nrows 2\nO 0 0\nX 0 1\nO 0 2\nX 0 3\nsing col 0 +\n"
    with pytest.raises(ValidationError):
        parse_grid(text)


@pytest.mark.parametrize("name, ell", [("unknot", 1), ("trefoil_right", 1), ("tref_sing3_ppm", 1),
                                       ("unknot_loop", 1), ("knot9_44_sing", 1)])
def test_components(name, ell):
    assert count_components(corpus(name)) == ell


def test_two_component_link():
    # Hopf link on a 4x4 grid
    hopf = SingularGrid.from_permutations([0, 1, 2, 3], [2, 3, 0, 1])
    assert count_components(hopf) == 2


def test_merge_columns_and_rows():
    g = corpus("trefoil_left")
    merged = None
    for c in range(g.num_cols - 1):
        try:
            merged = merge_columns(g, c)
            break
        except PreconditionError:
            continue
    assert merged is not None and merged.num_singular == 1 and merged.size == g.size
    with pytest.raises(PreconditionError):
        merge_columns(SingularGrid.from_permutations([0, 1], [1, 0]), 0)
    flipped = merge_rows(diagonal_flip(g), c)
    assert flipped.singular_rows == (c,)


@pytest.mark.parametrize("name", ["trefoil_right", "tref_sing2", "tref_sing3_ppm", "unknot_loop"])
def test_transforms_are_involutive_where_expected(name):
    g = corpus(name)
    assert diagonal_flip(diagonal_flip(g)) == g
    assert decoration_swap(decoration_swap(g)) == g
    assert quarter_turn(quarter_turn(g)) == g
    for t in ("flip", "swap", "quarter"):
        assert count_components(transform(g, t)) == count_components(g)


def test_transform_flags():
    g = corpus("tref_sing2")
    col, row = ("col", 2), ("row", 2)
    assert diagonal_flip(g).orientation(("row", 2)) == -g.orientation(col)
    assert decoration_swap(g).orientation(col) == -g.orientation(col)
    q = quarter_turn(g)
    assert q.orientation(("col", g.num_cols - 1 - 2)) == g.orientation(col)
    assert q.orientation(row) == -g.orientation(row)


def test_unknown_transform():
    with pytest.raises(ValueError):
        transform(corpus("unknot"), "spin")
