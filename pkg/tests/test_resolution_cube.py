from collections import Counter

import pytest
from helpers import corpus, corpus_names

from gridfloer.grid_model import count_components
from gridfloer.resolution_cube import HIGH, LOW, build_cube, resolve, resolve_roc, zero_sides
from gridfloer.verify import hat_polynomial

UNKNOT = {(0, 0): 1}
RIGHT = {(0, 2): 1, (-1, 0): 1, (-2, -2): 1}
LEFT = {(2, 2): 1, (1, 0): 1, (0, -2): 1}


def test_zero_sides_rule():
    assert zero_sides("OXXO") == (LOW, HIGH, LOW, HIGH)
    assert zero_sides("OOXX") == (HIGH, LOW, HIGH, LOW)
    assert zero_sides("XOOX") == (LOW, HIGH, LOW, HIGH)


@pytest.mark.parametrize("name", [n for n in corpus_names(max_size=7) if corpus(n).num_singular])
def test_two_admissible_crossings_per_line(name):
    cube = build_cube(corpus(name))
    for line in cube.lines:
        adm = [c for c in line.crossings if c.admissible]
        assert len(adm) == 2
        assert {c.lower_kind for c in adm} == {"O", "X"}
        assert cube.peak(line, 1) != cube.peak(line, -1)


def test_resolutions_of_one_double_point():
    g = corpus("tref_sing1")
    hats = [hat_polynomial(resolve(g, (b,))) for b in (0, 1)]
    assert sorted(map(sorted, (h.items() for h in hats))) == sorted([sorted(UNKNOT.items()),
                                                                    sorted(LEFT.items())])


def test_resolutions_of_three_double_points():
    g = corpus("tref_sing3_ppp")
    cube = build_cube(g)
    seen = Counter()
    for bits in cube.indices():
        h = hat_polynomial(resolve(g, bits))
        seen["unknot" if h == UNKNOT else "right" if h == RIGHT else "left" if h == LEFT else "other"] += 1
    assert seen == Counter(unknot=6, right=1, left=1)


@pytest.mark.parametrize("name", ["tref_sing2", "tref_sing3_ppm"])
def test_resolve_roc_keeps_the_rest(name):
    g = corpus(name)
    for axis, idx in g.singular_rocs:
        for bit in (0, 1):
            r = resolve_roc(g, axis, idx, bit)
            assert r.num_singular == g.num_singular - 1
            assert r.size == g.size


def test_resolve_matches_roc_by_roc():
    g = corpus("tref_sing2")
    (a0, i0), (a1, i1) = g.singular_rocs
    for bits in ((0, 0), (0, 1), (1, 0), (1, 1)):
        full = resolve(g, bits)
        step = resolve_roc(g, a0, i0, bits[0])
        remaining = step.singular_rocs[0]
        step = resolve_roc(step, *remaining, bits[1])
        assert hat_polynomial(full) == hat_polynomial(step)
        assert count_components(full) == count_components(step)


def test_bad_index():
    cube = build_cube(corpus("tref_sing1"))
    with pytest.raises(ValueError):
        cube.resolve((0, 1))
    with pytest.raises(ValueError):
        resolve_roc(corpus("trefoil_right"), "col", 0, 0)
