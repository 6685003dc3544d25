"""Bigraded F2 homology, Poincare polynomials, hat deconvolution, Euler characteristics.

Alexander gradings are carried as twice their value (``a2``) so that
half-integral gradings of links stay integral.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction


class NonDivisible(Exception):
    pass


def gf2_rank(rows) -> int:
    """Rank over F2 of a matrix whose rows are int bitsets."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = row
                rank += 1
                break
            row ^= p
    return rank


def blocks(cx):
    """Generator indices grouped by (maslov, a2)."""
    out = defaultdict(list)
    for i, (m, a) in enumerate(zip(cx.maslov, cx.alex2)):
        out[(m, a)].append(i)
    return out


def differential_rank(cx, source, target) -> int:
    """Rank of the differential block from the generators ``source`` into ``target``."""
    if not source or not target:
        return 0
    pos = {g: i for i, g in enumerate(target)}
    rows = []
    for g in source:
        bits = 0
        for t in cx.edges.get(g, ()):
            j = pos.get(t)
            if j is not None:
                bits ^= 1 << j
        if bits:
            rows.append(bits)
    from . import kernels

    return kernels.rank(rows, len(target))


def homology_ranks(cx) -> dict[tuple[int, int], int]:
    """Map (maslov, a2) -> dim H over F2 of the tilde complex."""
    groups = blocks(cx)
    drank = {}
    for (m, a), gens in groups.items():
        drank[(m, a)] = differential_rank(cx, gens, groups.get((m - 1, a), []))
    ranks = {}
    for (m, a), gens in groups.items():
        r = len(gens) - drank[(m, a)] - drank.get((m + 1, a), 0)
        if r:
            ranks[(m, a)] = r
    return ranks


# ---------------------------------------------------------------------------
# polynomials: dict (m, a2) -> coefficient

def poincare_polynomial(ranks) -> dict[tuple[int, int], int]:
    return {key: r for key, r in ranks.items() if r}


def multiply(p, q):
    out = defaultdict(int)
    for (m1, a1), c1 in p.items():
        for (m2, a2), c2 in q.items():
            out[(m1 + m2, a1 + a2)] += c1 * c2
    return {k: v for k, v in out.items() if v}


V_POLY = {(0, 0): 1, (-1, -2): 1}  # 1 + t^-1 q^-1 in (m, a2) keys


def v_power(e: int):
    out = {(0, 0): 1}
    for _ in range(e):
        out = multiply(out, V_POLY)
    return out


def deconvolve_hat(poly, n: int, components: int):
    """Divide a tilde polynomial by (1 + t^-1 q^-1)^(n - components)."""
    q = dict(poly)
    for _ in range(n - components):
        q = _divide_once(q)
    return q


def _divide_once(poly):
    # along each diagonal m - a the factor is 1 + s^-1 in s = t
    diagonals = defaultdict(dict)
    for (m, a2), c in poly.items():
        diagonals[2 * m - a2][m] = c
    out = {}
    for diag, coeffs in diagonals.items():
        lo, hi = min(coeffs), max(coeffs)
        carry = 0
        for m in range(hi, lo - 1, -1):
            qm = coeffs.get(m, 0) - carry
            if m == lo:
                if qm != 0:
                    raise NonDivisible("polynomial is not divisible by 1 + t^-1 q^-1")
                break
            if qm < 0:
                raise NonDivisible("quotient has a negative coefficient")
            if qm:
                out[(m, 2 * m - diag)] = qm
            carry = qm
    return out


def euler_characteristic(poly) -> dict[int, int]:
    """Substitute t = -1: map a2 -> signed coefficient."""
    out = defaultdict(int)
    for (m, a2), c in poly.items():
        out[a2] += c if m % 2 == 0 else -c
    return {a: c for a, c in out.items() if c}


def substitute(poly, fn):
    """Apply a monomial map (m, a2) -> (m', a2') to a polynomial."""
    out = defaultdict(int)
    for key, c in poly.items():
        out[fn(*key)] += c
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# text forms

def _exp(e) -> str:
    if isinstance(e, Fraction) and e.denominator != 1:
        return f"{e.numerator}/{e.denominator}"
    return str(int(e))


def _monomial(m: int, a2: int) -> str:
    a = Fraction(a2, 2)
    parts = []
    if m:
        parts.append("t" if m == 1 else f"t^{_exp(m)}")
    if a:
        parts.append("q" if a == 1 else f"q^{_exp(a)}")
    return "*".join(parts)


def format_poly(poly) -> str:
    """Fixed text form: monomials t^m*q^a sorted by (a, m)."""
    if not poly:
        return "0"
    terms = []
    for (m, a2) in sorted(poly, key=lambda k: (k[1], k[0])):
        c = poly[(m, a2)]
        mono = _monomial(m, a2)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        terms.append((sign, body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def format_euler(euler) -> str:
    return format_poly({(0, a2): c for a2, c in euler.items()})


def parse_poly(text: str):
    """Inverse of :func:`format_poly` (used for expected values in tests)."""
    text = text.strip()
    if text == "0":
        return {}
    out = defaultdict(int)
    tokens = text.replace(" - ", " + -").split(" + ")
    for tok in tokens:
        tok = tok.strip()
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:]
        coeff, m, a = 1, 0, Fraction(0)
        for factor in tok.split("*"):
            if factor.startswith("t"):
                m = int(factor[2:]) if factor.startswith("t^") else 1
            elif factor.startswith("q"):
                a = Fraction(factor[2:]) if factor.startswith("q^") else Fraction(1)
            else:
                coeff = int(factor)
        out[(m, int(2 * a))] += sign * coeff
    return {k: v for k, v in out.items() if v}


def ranks_json(ranks):
    return [
        {"m": m, "a": _exp(Fraction(a2, 2)), "rank": r}
        for (m, a2), r in sorted(ranks.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    ]
