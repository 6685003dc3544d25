"""Executable checks: chain-complex axioms, move invariance, Vassiliev relation,
symmetries and singular-loop acyclicity.

Every check returns a :class:`VerificationReport`; a failing report carries a
witness that replays the failure (generator indices, a seed and move list, or
the two polynomials that disagree).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .complex import build_complex
from .resolution_cube import resolve_roc
from .grid_model import SingularGrid, count_components, decoration_swap, diagonal_flip, quarter_turn
from .homology import (
    deconvolve_hat,
    euler_characteristic,
    format_euler,
    format_poly,
    homology_ranks,
    substitute,
)
from .moves import (
    Commutation,
    CyclicPermutation,
    Destabilization,
    Rotation,
    Stabilization,
    apply_move,
    format_move,
    legal_moves,
)


@dataclass
class VerificationReport:
    check: str
    grid: str
    passed: bool
    seed: int | None = None
    witness: object = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {"check": self.check, "grid": self.grid, "seed": self.seed,
             "pass": self.passed, "witness": self.witness},
            sort_keys=False,
        )


def hat_polynomial(grid: SingularGrid, budget=None, backend=None):
    cx = build_complex(grid, budget=budget, backend=backend)
    return deconvolve_hat(homology_ranks(cx), cx.n, cx.components)


# ---------------------------------------------------------------------------
# d^2 = 0

def d_squared_witness(edges):
    """First (source, target) pair joined by an odd number of length-2 paths, or None."""
    for s in sorted(edges):
        acc = set()
        for t in edges[s]:
            acc ^= set(edges.get(t, ()))
        if acc:
            return s, min(acc)
    return None


def check_d_squared(grid: SingularGrid, name: str = "", budget=None, backend=None, cx=None):
    cx = cx or build_complex(grid, budget=budget, backend=backend)
    bad = d_squared_witness(cx.edges)
    if bad is None:
        return VerificationReport("d2", name, True)
    s, t = bad
    (bs, ps), (bt, pt) = cx.generator(s), cx.generator(t)
    witness = {"source": s, "target": t, "source_generator": [bs, list(ps)],
               "target_generator": [bt, list(pt)]}
    return VerificationReport("d2", name, False, witness=witness)


# ---------------------------------------------------------------------------
# invariance under elementary moves

MOVE_WEIGHTS = {
    CyclicPermutation: 1.0,
    Commutation: 2.0,
    Stabilization: 1.0,
    Destabilization: 1.5,
    Rotation: 4.0,
}


def random_walk(grid: SingularGrid, seed: int, steps: int, max_size: int = 8):
    """Yield (move, grid) along a seeded walk of legal moves.

    Each move type gets a total weight shared by its instances, so rare moves
    (rotations) are picked whenever they are available.
    """
    rng = random.Random(seed)
    for _ in range(steps):
        moves = legal_moves(grid, max_size)
        by_type = {}
        for m in moves:
            by_type.setdefault(type(m), []).append(m)
        kinds = sorted(by_type, key=lambda t: t.__name__)
        kind = rng.choices(kinds, weights=[MOVE_WEIGHTS[t] for t in kinds])[0]
        move = rng.choice(by_type[kind])
        grid = apply_move(grid, move)
        yield move, grid


def fuzz_invariance(grid: SingularGrid, seed: int, steps: int, name: str = "",
                    max_size: int = 8, budget=None, backend=None):
    start = hat_polynomial(grid, budget, backend)
    done = []
    for move, g in random_walk(grid, seed, steps, max_size):
        done.append(format_move(move))
        now = hat_polynomial(g, budget, backend)
        if now != start:
            witness = {"moves": done, "expected": format_poly(start), "got": format_poly(now)}
            return VerificationReport("fuzz", name, False, seed=seed, witness=witness)
    kinds = sorted({m.split()[0] for m in done})
    return VerificationReport("fuzz", name, True, seed=seed,
                              details={"moves": done, "kinds": kinds, "poly": format_poly(start)})


# ---------------------------------------------------------------------------
# Vassiliev relation

def _cube_euler(grid, budget, backend):
    """Euler characteristic in the grading shifted by -#I only.

    The shipped Maslov grading adds k, which multiplies chi by (-1)^k.
    """
    chi = euler_characteristic(hat_polynomial(grid, budget, backend))
    sign = -1 if grid.num_singular % 2 else 1
    return {a: sign * c for a, c in chi.items()}


@dataclass
class _Block:
    maslov: list
    alex2: list
    edges: dict


def _diagonal_block(cx, i: int, bit: int) -> _Block:
    nperm = len(cx.perms)
    keep = [s for s in range(len(cx)) if (s // nperm) >> i & 1 == bit]
    pos = {s: j for j, s in enumerate(keep)}
    edges = {}
    for s in keep:
        ts = [pos[t] for t in cx.edges.get(s, ()) if t in pos]
        if ts:
            edges[pos[s]] = ts
    return _Block([cx.maslov[s] for s in keep], [cx.alex2[s] for s in keep], edges)


def _cone_structure(grid, roc, budget, backend):
    """Check the cube complex is the cone of a map between its two resolutions.

    The differential never lowers the bit of ``roc`` (block-triangular), and each
    diagonal block has the homology of the resolved grid, shifted by one for the
    0 side.  Blocks are compared through homology rather than entry by entry
    because the winding arcs may sit across a grid line from where the resolved
    grid puts its straight line, which changes the matrix but not its homology.
    """
    cx = build_complex(grid, budget=budget, backend=backend)
    i = grid.singular_rocs.index(roc)
    nperm = len(cx.perms)
    for s, targets in cx.edges.items():
        if (s // nperm) >> i & 1 and any(not (t // nperm) >> i & 1 for t in targets):
            return {"block": "lower-left", "source": s}
    for bit, shift in ((0, 1), (1, 0)):
        block = homology_ranks(_diagonal_block(cx, i, bit))
        sub = homology_ranks(build_complex(resolve_roc(grid, *roc, bit), budget=budget, backend=backend))
        if block != {(m + shift, a): r for (m, a), r in sub.items()}:
            return {"block": f"diagonal-{bit}", "ranks": format_poly(block), "resolved": format_poly(sub)}
    return None


def check_vassiliev(grid: SingularGrid, roc=None, name: str = "", budget=None, backend=None,
                    chain_level: bool = True):
    rocs = [roc] if roc is not None else list(grid.singular_rocs)
    if not rocs:
        return VerificationReport("vassiliev", name, True, details={"skipped": "no singular RoC"})
    chi = _cube_euler(grid, budget, backend)
    for r in rocs:
        chi0 = _cube_euler(resolve_roc(grid, *r, 0), budget, backend)
        chi1 = _cube_euler(resolve_roc(grid, *r, 1), budget, backend)
        diff = {a: chi0.get(a, 0) - chi1.get(a, 0) for a in set(chi0) | set(chi1)}
        diff = {a: c for a, c in diff.items() if c}
        if diff != chi:
            witness = {"roc": list(r), "chi": format_euler(chi), "chi0": format_euler(chi0),
                       "chi1": format_euler(chi1)}
            return VerificationReport("vassiliev", name, False, witness=witness)
        if chain_level:
            bad = _cone_structure(grid, r, budget, backend)
            if bad is not None:
                return VerificationReport("vassiliev", name, False, witness={"roc": list(r), **bad})
    return VerificationReport("vassiliev", name, True)


# ---------------------------------------------------------------------------
# symmetries

def sharp_substitution(poly):
    """t^i q^j -> t^(i-2j) q^(-j): the L^# relation, in (m, 2a) keys."""
    return substitute(poly, lambda m, a2: (m - a2, -a2))


def mirror_ranks(poly, components: int, k: int):
    """Ranks of the mirror predicted from ``poly``: (m, a) -> rank(-m+1-l+k, -a)."""
    return substitute(poly, lambda m, a2: (-m + 1 - components + k, -a2))


def check_symmetries(grid: SingularGrid, name: str = "", budget=None, backend=None):
    ell = count_components(grid)
    k = grid.num_singular
    base = hat_polynomial(grid, budget, backend)
    flipped = hat_polynomial(diagonal_flip(grid), budget, backend)
    sharp = hat_polynomial(decoration_swap(diagonal_flip(grid)), budget, backend)
    mirror = hat_polynomial(quarter_turn(grid), budget, backend)
    results = {
        "reverse": flipped == base,
        "sharp": sharp == sharp_substitution(base),
        "mirror": mirror == mirror_ranks(base, ell, k),
    }
    details = {"poly": format_poly(base), "sharp_fixed": sharp_substitution(base) == base}
    if all(results.values()):
        return VerificationReport("symmetry", name, True, details=details)
    witness = {
        "failed": sorted(key for key, ok in results.items() if not ok),
        "poly": format_poly(base),
        "reverse": format_poly(flipped),
        "sharp": format_poly(sharp),
        "mirror": format_poly(mirror),
    }
    return VerificationReport("symmetry", name, False, witness=witness, details=details)


# ---------------------------------------------------------------------------
# singular loops

def check_acyclicity(grid: SingularGrid, name: str = "", budget=None, backend=None):
    ranks = homology_ranks(build_complex(grid, budget=budget, backend=backend))
    if not ranks:
        return VerificationReport("acyclic", name, True)
    return VerificationReport("acyclic", name, False, witness={"ranks": format_poly(ranks)})


CHECKS = {
    "d2": check_d_squared,
    "vassiliev": check_vassiliev,
    "symmetry": check_symmetries,
    "acyclic": check_acyclicity,
}
