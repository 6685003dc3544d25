import random

import pytest
from helpers import corpus, random_singular, rotation_seed

from gridfloer.grid_model import GridSyntaxError, IllegalMove, PreconditionError, count_components
from gridfloer.moves import (
    Commutation,
    CyclicPermutation,
    Destabilization,
    Rotation,
    Stabilization,
    add_singular_loop,
    apply_move,
    commutation,
    cyclic_permutation,
    destabilization,
    format_move,
    legal_moves,
    parse_move,
    parse_script,
    rotate_column,
    rotate_row,
    stabilization,
)
from gridfloer.verify import hat_polynomial


def test_cyclic_permutation_round_trip():
    g = corpus("trefoil_right")
    for axis in ("col", "row"):
        assert cyclic_permutation(cyclic_permutation(g, axis, "start"), axis, "end") == g


def test_cyclic_permutation_refuses_singular_edge():
    g = corpus("tref_sing1")  # singular column 0
    with pytest.raises(IllegalMove):
        cyclic_permutation(g, "col", "start")


def test_commutation_needs_disjoint_spans():
    g = corpus("trefoil_right")
    with pytest.raises(IllegalMove):
        commutation(g, "col", 0)


@pytest.mark.parametrize("name", ["unknot", "trefoil_right", "tref_sing1", "tref_sing2"])
@pytest.mark.parametrize("pattern", ["NE", "NW", "SE", "SW"])
def test_stabilization_round_trip(name, pattern):
    g = corpus(name)
    d = next(d for d in g.decorations if not g.is_singular("col", d.col) and not g.is_singular("row", d.row))
    s = stabilization(g, d.col, d.row, pattern)
    assert s.size == g.size + 1
    assert count_components(s) == count_components(g)
    back = [m for m in legal_moves(s) if isinstance(m, Destabilization)]
    assert any(apply_move(s, m) == g for m in back)


def test_stabilization_keeps_homology():
    g = corpus("tref_sing1")
    before = hat_polynomial(g)
    for m in legal_moves(g, max_size=6):
        if isinstance(m, Stabilization):
            assert hat_polynomial(apply_move(g, m)) == before


def test_destabilization_precondition():
    with pytest.raises(IllegalMove):
        destabilization(corpus("trefoil_right"), 0, 0)


def test_rotation_round_trip_and_invariance():
    rng = random.Random(3)
    g = rotation_seed(rng, k=2)
    c = next(c for c in g.singular_cols if _rotates(g, c))
    r = rotate_column(g, c)
    assert r.num_singular == g.num_singular and r.size == g.size
    low = min(d.row for d in g.column(c))
    assert ("row", low + 1) in r.singular_rocs
    assert rotate_row(r, low + 1) == g
    assert hat_polynomial(r) == hat_polynomial(g)


def _rotates(g, c):
    try:
        rotate_column(g, c)
        return True
    except (IllegalMove, PreconditionError):
        return False


def test_add_singular_loop():
    g = add_singular_loop(corpus("unknot"), 0)
    assert g.num_singular == 1 and count_components(g) == 1
    with pytest.raises(PreconditionError):
        add_singular_loop(corpus("tref_sing1"), 0)


@pytest.mark.parametrize(
    "move",
    [CyclicPermutation(side="start", axis="col"), CyclicPermutation(side="end", axis="row"),
     Commutation("row", 2), Stabilization(1, 2, "SW"), Destabilization(0, 4), Rotation("col", 3)],
)
def test_move_text_round_trip(move):
    assert parse_move(format_move(move)) == move


def test_parse_script():
    moves = parse_script("# walk\ncyclic col start\n\ncommute row 1  # swap\nstabilize 0 0 NE\n")
    assert moves == [CyclicPermutation(side="start", axis="col"), Commutation("row", 1),
                     Stabilization(0, 0, "NE")]
    with pytest.raises(GridSyntaxError):
        parse_move("teleport 1 2")


def test_legal_moves_are_legal():
    rng = random.Random(9)
    for _ in range(5):
        g = random_singular(rng, 5, 1)
        for m in legal_moves(g, max_size=6):
            h = apply_move(g, m)
            assert count_components(h) == count_components(g)
            assert h.num_singular == g.num_singular
