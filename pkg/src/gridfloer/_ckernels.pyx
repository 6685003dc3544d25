# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the hot loops in ``complex`` and ``homology``.

Every routine here mirrors a pure-Python function line for line; the test
suite compares the two on random grids.
"""

from libc.stdlib cimport malloc, free, qsort, realloc
from libc.string cimport memcpy, memset
from libc.stdint cimport uint64_t

cdef enum:
    ALPHA = 0
    BETA = 1
    PEAK = 2
    HIGH = 1
    MAXN = 16


# ---------------------------------------------------------------------------
# F2 rank

def gf2_rank(rows, Py_ssize_t width):
    """Rank over F2 of int-bitset rows of at most ``width`` bits."""
    cdef Py_ssize_t nr = len(rows)
    if nr == 0 or width <= 0:
        return 0
    cdef Py_ssize_t nw = (width + 63) // 64
    cdef uint64_t *mat = <uint64_t *> malloc(nr * nw * sizeof(uint64_t))
    if mat == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, w, r, piv
    cdef bytes raw
    cdef uint64_t bit, tmp
    cdef Py_ssize_t rank = 0
    try:
        for i in range(nr):
            raw = (<object> rows[i]).to_bytes(nw * 8, "little")
            memcpy(&mat[i * nw], <char *> raw, nw * 8)
        for j in range(width):
            if rank == nr:
                break
            w = j >> 6
            bit = (<uint64_t> 1) << (j & 63)
            piv = -1
            for r in range(rank, nr):
                if mat[r * nw + w] & bit:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for i in range(w, nw):
                    tmp = mat[piv * nw + i]
                    mat[piv * nw + i] = mat[rank * nw + i]
                    mat[rank * nw + i] = tmp
            for r in range(piv + 1, nr):
                if mat[r * nw + w] & bit:
                    for i in range(w, nw):
                        mat[r * nw + i] ^= mat[rank * nw + i]
            rank += 1
    finally:
        free(mat)
    return rank


# ---------------------------------------------------------------------------
# gradings

cdef inline int _pairs(const int *ax, const int *ay, int na, const int *bx, const int *by, int nb) nogil:
    cdef int i, j, c = 0
    for i in range(na):
        for j in range(nb):
            if (bx[j] - ax[i]) * (by[j] - ay[i]) > 0:
                c += 1
    return c


def gradings(perms, int n, o2, x2, int components):
    """Maslov (M_O) and doubled Alexander grading of every permutation.

    ``o2`` and ``x2`` hold doubled decoration centres.
    """
    cdef int no = len(o2), nx = len(x2)
    cdef int ox[4 * MAXN], oy[4 * MAXN], xx[4 * MAXN], xy[4 * MAXN]
    cdef int px[MAXN], py[MAXN]
    cdef int i, joo, jxx, jpp, mo, mx
    if n > MAXN or no > 4 * MAXN or nx > 4 * MAXN:
        raise ValueError("grid too large for the compiled kernel")
    for i in range(no):
        ox[i], oy[i] = o2[i]
    for i in range(nx):
        xx[i], xy[i] = x2[i]
    joo = _pairs(ox, oy, no, ox, oy, no)
    jxx = _pairs(xx, xy, nx, xx, xy, nx)
    ms = []
    as2 = []
    for perm in perms:
        for i in range(n):
            px[i] = 2 * i
            py[i] = 2 * <int> perm[i]
        jpp = _pairs(px, py, n, px, py, n)
        mo = (jpp - 2 * _pairs(px, py, n, ox, oy, no) + joo) // 2 + 1
        mx = (jpp - 2 * _pairs(px, py, n, xx, xy, nx) + jxx) // 2 + 1
        ms.append(mo)
        as2.append(mo - mx - (n - components))
    return ms, as2


# ---------------------------------------------------------------------------
# polygons

cdef struct Geo:
    int n
    int scale
    int ndeco
    int vline[MAXN]
    int hline[MAXN]
    int peak[MAXN]
    int kind[4 * MAXN]
    int dx[4 * MAXN]
    int dy[4 * MAXN]
    int cband[4 * MAXN]
    int cside[4 * MAXN]
    int rband[4 * MAXN]
    int rside[4 * MAXN]


cdef inline int _inside_edge(int side, int mode, bint before, bint low_edge) nogil:
    if mode == PEAK:
        if low_edge:
            mode = ALPHA if before else BETA
        else:
            mode = BETA if before else ALPHA
    cdef bint on_alpha_high = side == HIGH
    if mode == ALPHA:
        return on_alpha_high if low_edge else not on_alpha_high
    return (not on_alpha_high) if low_edge else on_alpha_high


cdef inline int _mod(int a, int m) nogil:
    a %= m
    return a + m if a < 0 else a


cdef bint _has_decoration(Geo *g, int vL, int vR, int hB, int hT, int ml, int mr, int mb, int mt) nogil:
    cdef int n = g.n, S = g.scale
    cdef int N = S * n
    cdef int w = _mod(vR - vL, n), h = _mod(hT - hB, n)
    cdef int x0 = S * vL, y0 = S * hB
    cdef int lv = g.vline[vL], rv = g.vline[vR], bh = g.hline[hB], th = g.hline[hT]
    cdef int d, xo, yo, cb, rb
    cdef bint on_l, on_r, on_b, on_t, before, ins
    for d in range(g.ndeco):
        xo = _mod(g.dx[d] - x0, N)
        yo = _mod(g.dy[d] - y0, N)
        cb = g.cband[d]
        rb = g.rband[d]
        on_l = cb >= 0 and cb == lv
        on_r = cb >= 0 and cb == rv
        on_b = rb >= 0 and rb == bh
        on_t = rb >= 0 and rb == th
        if on_l or on_r:
            if on_b:
                before = True
            elif on_t:
                before = False
            else:
                before = yo < _mod(g.peak[cb] - y0, N)
            ins = _inside_edge(g.cside[d], ml if on_l else mr, before, on_l)
        else:
            ins = 0 < xo < S * w
        if not ins:
            continue
        if on_b or on_t:
            if on_l:
                before = True
            elif on_r:
                before = False
            else:
                before = xo < _mod(g.peak[rb] - x0, N)
            ins = _inside_edge(g.rside[d], mb if on_b else mt, before, on_b)
        else:
            ins = 0 < yo < S * h
        if ins:
            return True
    return False


cdef int _options(Geo *g, int line, int bits, int span, int base, int *modes, int *flips) nogil:
    modes[0] = ALPHA
    flips[0] = 0
    if line < 0:
        return 1
    if (bits >> line) & 1:
        modes[0] = BETA
        return 1
    cdef int N = g.scale * g.n
    cdef int off = _mod(g.peak[line] - g.scale * base, N)
    if 0 < off < g.scale * span:
        modes[1] = PEAK
        flips[1] = 1 << line
        return 2
    return 1


cdef long _perm_rank(int *p, int n, long *fact) nogil:
    cdef long r = 0
    cdef int i, j, c
    for i in range(n):
        c = 0
        for j in range(i + 1, n):
            if p[j] < p[i]:
                c += 1
        r += c * fact[n - 1 - i]
    return r


cdef int _cmp_long(const void *a, const void *b) noexcept nogil:
    cdef long x = (<long *> a)[0], y = (<long *> b)[0]
    return (x > y) - (x < y)


cdef void *_grow(long *buf, long cap) except NULL:
    cdef void *nb = realloc(buf, cap * sizeof(long))
    if nb == NULL:
        raise MemoryError()
    return nb


def differential(perms, int n, int k, vline, hline, peaks, kinds, xs, ys, cb, cs, rb, rs, int scale):
    """Edges of the tilde differential: dict source -> sorted odd-count targets."""
    cdef Geo g
    cdef int i
    if n > MAXN or len(kinds) > 4 * MAXN:
        raise ValueError("grid too large for the compiled kernel")
    g.n = n
    g.scale = scale
    g.ndeco = len(kinds)
    for i in range(n):
        g.vline[i] = vline[i]
        g.hline[i] = hline[i]
    for i in range(k):
        g.peak[i] = peaks[i]
    for i in range(g.ndeco):
        g.kind[i] = kinds[i]
        g.dx[i] = xs[i]
        g.dy[i] = ys[i]
        g.cband[i] = cb[i]
        g.cside[i] = cs[i]
        g.rband[i] = rb[i]
        g.rside[i] = rs[i]

    cdef long fact[MAXN + 1]
    fact[0] = 1
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    cdef long nperm = fact[n]
    cdef int *flat = <int *> malloc(nperm * n * sizeof(int))
    cdef long cap = 256
    cdef long *buf = <long *> malloc(cap * sizeof(long))
    if flat == NULL or buf == NULL:
        free(flat)
        free(buf)
        raise MemoryError()
    cdef long pi, src, cnt, j, t
    for pi in range(nperm):
        perm = perms[pi]
        for i in range(n):
            flat[pi * n + i] = perm[i]

    cdef int b, vL, vR, hB, hT, w, h, s
    cdef int nl, nr_, nb, nt, a1, a2, a3, a4, nbits
    cdef int lm[2], lf[2], rm[2], rf[2], bm[2], bf[2], tm[2], tf[2]
    cdef int tp[MAXN]
    cdef int *p
    cdef bint empty
    cdef long tgt
    edges = {}
    try:
        for b in range(1 << k):
            for pi in range(nperm):
                p = &flat[pi * n]
                cnt = 0
                for vL in range(n):
                    hB = p[vL]
                    for vR in range(n):
                        if vR == vL:
                            continue
                        hT = p[vR]
                        w = _mod(vR - vL, n)
                        h = _mod(hT - hB, n)
                        empty = True
                        for s in range(1, w):
                            t = _mod(p[(vL + s) % n] - hB, n)
                            if 0 < t < h:
                                empty = False
                                break
                        if not empty:
                            continue
                        nl = _options(&g, g.vline[vL], b, h, hB, lm, lf)
                        nr_ = _options(&g, g.vline[vR], b, h, hB, rm, rf)
                        nb = _options(&g, g.hline[hB], b, w, vL, bm, bf)
                        nt = _options(&g, g.hline[hT], b, w, vL, tm, tf)
                        for i in range(n):
                            tp[i] = p[i]
                        tp[vL] = hT
                        tp[vR] = hB
                        tgt = _perm_rank(tp, n, fact)
                        for a1 in range(nl):
                            for a2 in range(nr_):
                                for a3 in range(nb):
                                    for a4 in range(nt):
                                        if _has_decoration(&g, vL, vR, hB, hT, lm[a1], rm[a2], bm[a3], tm[a4]):
                                            continue
                                        nbits = b | lf[a1] | rf[a2] | bf[a3] | tf[a4]
                                        if cnt == cap:
                                            cap *= 2
                                            buf = <long *> _grow(buf, cap)
                                        buf[cnt] = nbits * nperm + tgt
                                        cnt += 1
                if cnt:
                    qsort(buf, cnt, sizeof(long), _cmp_long)
                    out = []
                    j = 0
                    while j < cnt:
                        t = j
                        while t < cnt and buf[t] == buf[j]:
                            t += 1
                        if (t - j) & 1:
                            out.append(buf[j])
                        j = t
                    if out:
                        src = b * nperm + pi
                        edges[src] = out
    finally:
        free(flat)
        free(buf)
    return edges
