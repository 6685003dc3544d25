"""Property-based tests over random singular grids."""

import random

from helpers import random_regular, random_singular
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gridfloer.complex import build_complex
from gridfloer.grid_model import count_components, parse_grid, serialize_grid, transform
from gridfloer.moves import apply_move, legal_moves
from gridfloer.verify import d_squared_witness, hat_polynomial


@st.composite
def grids(draw, max_n=5, max_k=2):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(0, max_k)) if n >= 4 else 0
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_singular(rng, n, k) if k else random_regular(rng, n)


FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@FAST
@given(grids())
def test_serialization_round_trip(g):
    assert parse_grid(serialize_grid(g)) == g


@FAST
@given(grids(), st.sampled_from(["flip", "swap", "quarter"]))
def test_components_invariant_under_transforms(g, t):
    assert count_components(transform(g, t)) == count_components(g)


@FAST
@given(grids(), st.data())
def test_components_invariant_under_moves(g, data):
    moves = legal_moves(g, max_size=6)
    move = data.draw(st.sampled_from(moves))
    h = apply_move(g, move)
    assert count_components(h) == count_components(g)
    assert h.num_singular == g.num_singular


@FAST
@given(grids(max_n=5))
def test_d_squared_and_grading(g):
    cx = build_complex(g)
    assert d_squared_witness(cx.edges) is None
    for s, targets in cx.edges.items():
        for t in targets:
            assert cx.maslov[t] == cx.maslov[s] - 1 and cx.alex2[t] == cx.alex2[s]


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(grids(max_n=5, max_k=1), st.data())
def test_hat_invariant_under_one_move(g, data):
    moves = legal_moves(g, max_size=6)
    move = data.draw(st.sampled_from(moves))
    assert hat_polynomial(apply_move(g, move)) == hat_polynomial(g)
