import json

from helpers import corpus

from gridfloer.complex import build_complex
from gridfloer.homology import parse_poly
from gridfloer.verify import (
    CHECKS,
    check_acyclicity,
    check_d_squared,
    check_symmetries,
    check_vassiliev,
    fuzz_invariance,
    mirror_ranks,
    random_walk,
    sharp_substitution,
)


def test_report_json_schema():
    rep = check_d_squared(corpus("trefoil_right"), name="trefoil_right")
    out = json.loads(rep.to_json())
    assert out == {"check": "d2", "grid": "trefoil_right", "seed": None, "pass": True, "witness": None}


def test_d_squared_witness_on_broken_complex():
    g = corpus("unknot")
    cx = build_complex(g)
    cx.edges = {0: [1], 1: [0]}
    rep = check_d_squared(g, cx=cx)
    assert not rep.passed
    assert rep.witness["source"] == 0 and rep.witness["target"] == 0
    assert len(rep.witness["source_generator"]) == 2


def test_vassiliev_on_singular_trefoils():
    for name in ("tref_sing1", "tref_sing2"):
        assert check_vassiliev(corpus(name)).passed
    skipped = check_vassiliev(corpus("trefoil_right"))
    assert skipped.passed and "skipped" in skipped.details


def test_vassiliev_single_roc_without_chain_level():
    g = corpus("tref_sing2")
    assert check_vassiliev(g, roc=g.singular_rocs[1], chain_level=False).passed


def test_symmetries():
    rep = check_symmetries(corpus("tref_sing3_ppm"))
    assert rep.passed and rep.details["sharp_fixed"]


def test_substitutions():
    p = parse_poly("q^-1 + 2*t + t^2*q")
    assert sharp_substitution(sharp_substitution(p)) == p
    assert mirror_ranks(mirror_ranks(p, 1, 1), 1, 1) == p
    assert mirror_ranks(parse_poly("t^-2*q^-1 + t^-1 + q"), 1, 0) == parse_poly("q^-1 + t + t^2*q")


def test_acyclicity():
    assert check_acyclicity(corpus("unknot_loop")).passed
    rep = check_acyclicity(corpus("trefoil_right"))
    assert not rep.passed and rep.witness["ranks"] != "0"


def test_fuzz_is_reproducible():
    g = corpus("tref_sing1")
    a = fuzz_invariance(g, seed=5, steps=6, max_size=6)
    b = fuzz_invariance(g, seed=5, steps=6, max_size=6)
    assert a.passed and a.details["moves"] == b.details["moves"]
    walk = list(random_walk(g, seed=5, steps=6, max_size=6))
    assert len(walk) == 6


def test_check_table():
    assert set(CHECKS) == {"d2", "vassiliev", "symmetry", "acyclic"}
