# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: canonical labelling and the Hochster Betti sweep.

Semantics match ``cwinv._pykernels`` exactly; the work runs without the GIL.
"""

from libc.stdlib cimport malloc, calloc, realloc, free
from libc.string cimport memcpy, memset
from libc.stdint cimport uint64_t, int64_t, int32_t, uint32_t, uint8_t

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil
    int clz64 "__builtin_clzll"(unsigned long long) nogil

cdef enum:
    MAXN = 64
    MAXGEN = 256

MAX_SWEEP_VERTICES = 20


# -- canonical labelling -----------------------------------------------------

cdef struct Ctx:
    int n
    uint64_t adj[MAXN]
    uint64_t best[MAXN]
    int bestlab[MAXN]
    int have_best
    int ngens
    int* gens
    int fixed[MAXN]
    int bestpath[MAXN]
    int bestdepth


cdef int refine_c(const uint64_t* adj, uint64_t* cells, int ncells) noexcept nogil:
    cdef uint64_t groups[MAXN + 1]
    cdef uint64_t out[MAXN]
    cdef int cnts[MAXN]
    cdef int s = 0, i, k, v, nout, kmin, kmax
    cdef uint64_t c, splitter, rem
    cdef bint split
    while s < ncells:
        splitter = cells[s]
        split = False
        nout = 0
        for i in range(ncells):
            c = cells[i]
            if (c & (c - 1)) == 0:
                out[nout] = c
                nout += 1
                continue
            kmin = MAXN + 1
            kmax = -1
            rem = c
            while rem:
                v = ctz64(rem)
                rem &= rem - 1
                k = popcount64(adj[v] & splitter)
                cnts[v] = k
                if k < kmin:
                    kmin = k
                if k > kmax:
                    kmax = k
            if kmin == kmax:
                out[nout] = c
                nout += 1
                continue
            split = True
            for k in range(kmin, kmax + 1):
                groups[k] = 0
            rem = c
            while rem:
                v = ctz64(rem)
                rem &= rem - 1
                groups[cnts[v]] |= (<uint64_t>1) << v
            for k in range(kmin, kmax + 1):
                if groups[k]:
                    out[nout] = groups[k]
                    nout += 1
        if split:
            memcpy(cells, out, nout * sizeof(uint64_t))
            ncells = nout
            s = 0
        else:
            s += 1
    return ncells


cdef inline int uf_find(int* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef int leaf(Ctx* ctx, uint64_t* cells, int depth) noexcept nogil:
    """Returns a depth to unwind to, or -1."""
    cdef int n = ctx.n
    cdef int lab[MAXN]
    cdef int inv[MAXN]
    cdef int perm[MAXN]
    cdef uint64_t rows[MAXN]
    cdef int i, u, cmp
    cdef uint64_t r, rem
    for i in range(n):
        lab[i] = ctz64(cells[i])
        inv[lab[i]] = i
    for i in range(n):
        r = 0
        rem = ctx.adj[lab[i]]
        while rem:
            u = ctz64(rem)
            rem &= rem - 1
            r |= (<uint64_t>1) << inv[u]
        rows[i] = r
    cmp = 0
    if ctx.have_best:
        for i in range(n):
            if rows[i] != ctx.best[i]:
                cmp = 1 if rows[i] > ctx.best[i] else -1
                break
    if not ctx.have_best or cmp > 0:
        ctx.have_best = 1
        memcpy(ctx.best, rows, n * sizeof(uint64_t))
        memcpy(ctx.bestlab, lab, n * sizeof(int))
        memcpy(ctx.bestpath, ctx.fixed, depth * sizeof(int))
        ctx.bestdepth = depth
        return -1
    if cmp < 0:
        return -1
    for i in range(n):
        perm[ctx.bestlab[i]] = lab[i]
    if ctx.ngens < MAXGEN:
        memcpy(ctx.gens + ctx.ngens * MAXN, perm, n * sizeof(int))
        ctx.ngens += 1
    # jump back when the automorphism carries the best path onto this one
    if ctx.bestdepth != depth:
        return -1
    for i in range(depth):
        if perm[ctx.bestpath[i]] != ctx.fixed[i]:
            return -1
    i = 0
    while ctx.bestpath[i] == ctx.fixed[i]:
        i += 1
    return i


cdef int search(Ctx* ctx, const uint64_t* incells, int ncells, int depth) noexcept nogil:
    cdef uint64_t cells[MAXN]
    cdef uint64_t child[MAXN]
    cdef int tried[MAXN]
    cdef int parent[MAXN]
    cdef int ntried = 0, target = -1, i, g, d, x, a, b, v, root, t, jump, seen = 0
    cdef int n = ctx.n
    cdef uint64_t cell, rem
    cdef int* perm
    cdef bint ok, skip
    memcpy(cells, incells, ncells * sizeof(uint64_t))
    ncells = refine_c(ctx.adj, cells, ncells)
    for i in range(ncells):
        if cells[i] & (cells[i] - 1):
            target = i
            break
    if target < 0:
        return leaf(ctx, cells, depth)
    for x in range(n):
        parent[x] = x
    cell = cells[target]
    rem = cell
    while rem:
        v = ctz64(rem)
        rem &= rem - 1
        if ntried > 0:
            for g in range(seen, ctx.ngens):
                perm = ctx.gens + g * MAXN
                ok = True
                for d in range(depth):
                    if perm[ctx.fixed[d]] != ctx.fixed[d]:
                        ok = False
                        break
                if ok:
                    for x in range(n):
                        a = uf_find(parent, x)
                        b = uf_find(parent, perm[x])
                        if a != b:
                            parent[a] = b
            seen = ctx.ngens
            root = uf_find(parent, v)
            skip = False
            for t in range(ntried):
                if uf_find(parent, tried[t]) == root:
                    skip = True
                    break
            if skip:
                continue
        tried[ntried] = v
        ntried += 1
        memcpy(child, cells, target * sizeof(uint64_t))
        child[target] = (<uint64_t>1) << v
        child[target + 1] = cell & ~((<uint64_t>1) << v)
        memcpy(child + target + 2, cells + target + 1, (ncells - target - 1) * sizeof(uint64_t))
        ctx.fixed[depth] = v
        jump = search(ctx, child, ncells + 1, depth + 1)
        if jump >= 0 and jump < depth:
            return jump
    return -1


def canonical_labeling(int n, adj, colors=None):
    """Return ``lab`` with ``lab[i]`` = original vertex placed at canonical position ``i``."""
    if n == 0:
        return []
    if n > 62:
        raise ValueError("canonical labelling supports at most 62 vertices")
    cdef Ctx ctx
    cdef uint64_t cells[MAXN]
    cdef int ncells = 0, i
    ctx.n = n
    ctx.have_best = 0
    ctx.ngens = 0
    ctx.bestdepth = 0
    for i in range(n):
        ctx.adj[i] = <uint64_t>adj[i]
    if colors is None:
        cells[0] = ((<uint64_t>1) << n) - 1
        ncells = 1
    else:
        bycol = {}
        for i in range(n):
            c = colors[i]
            bycol[c] = bycol.get(c, 0) | (1 << i)
        for c in sorted(bycol):
            cells[ncells] = <uint64_t>bycol[c]
            ncells += 1
    ctx.gens = <int*>malloc(MAXGEN * MAXN * sizeof(int))
    if ctx.gens == NULL:
        raise MemoryError()
    try:
        with nogil:
            search(&ctx, cells, ncells, 0)
    finally:
        free(ctx.gens)
    return [ctx.bestlab[i] for i in range(n)]


# -- Hochster sweep ----------------------------------------------------------

cdef struct Work:
    uint64_t* mat
    size_t matcap
    int32_t* pivot
    size_t pivcap
    int64_t* dense
    size_t densecap


cdef int ensure(Work* w, size_t matwords, size_t pivots, size_t dense) noexcept nogil:
    cdef void* p
    if matwords > w.matcap:
        p = realloc(w.mat, matwords * sizeof(uint64_t))
        if p == NULL:
            return -1
        w.mat = <uint64_t*>p
        w.matcap = matwords
    if pivots > w.pivcap:
        p = realloc(w.pivot, pivots * sizeof(int32_t))
        if p == NULL:
            return -1
        w.pivot = <int32_t*>p
        w.pivcap = pivots
    if dense > w.densecap:
        p = realloc(w.dense, dense * sizeof(int64_t))
        if p == NULL:
            return -1
        w.dense = <int64_t*>p
        w.densecap = dense
    return 0


cdef int64_t rank_gf2(Work* w, const uint32_t* rowfaces, int nrows, int ncols,
                      const int32_t* idx) noexcept nogil:
    cdef int words = (ncols + 63) >> 6
    cdef int r, k, col, top
    cdef int64_t rank = 0
    cdef uint64_t* row
    cdef uint64_t* prow
    cdef uint32_t f, rem
    cdef int v, c
    if ensure(w, <size_t>nrows * words, ncols, 0) < 0:
        return -1
    memset(w.mat, 0, <size_t>nrows * words * sizeof(uint64_t))
    for c in range(ncols):
        w.pivot[c] = -1
    for r in range(nrows):
        f = rowfaces[r]
        row = w.mat + <size_t>r * words
        rem = f
        while rem:
            v = ctz64(rem)
            rem &= rem - 1
            c = idx[f & ~((<uint32_t>1) << v)]
            row[c >> 6] |= (<uint64_t>1) << (c & 63)
    for r in range(nrows):
        row = w.mat + <size_t>r * words
        while True:
            top = -1
            for k in range(words - 1, -1, -1):
                if row[k]:
                    top = (k << 6) + 63 - clz64(row[k])
                    break
            if top < 0:
                break
            if w.pivot[top] < 0:
                w.pivot[top] = r
                rank += 1
                break
            prow = w.mat + <size_t>w.pivot[top] * words
            for k in range((top >> 6) + 1):
                row[k] ^= prow[k]
    return rank


cdef int64_t inv_mod(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int64_t rank_mod_p(Work* w, const uint32_t* rowfaces, int nrows, int ncols,
                        const int32_t* idx, int64_t p) noexcept nogil:
    cdef int64_t* m
    cdef int64_t* prow
    cdef int64_t* row
    cdef int r, c, i, v, sign, piv
    cdef int64_t rank = 0, inv, fct
    cdef uint32_t f, rem
    if ensure(w, 0, 0, <size_t>nrows * ncols) < 0:
        return -1
    m = w.dense
    memset(m, 0, <size_t>nrows * ncols * sizeof(int64_t))
    for r in range(nrows):
        f = rowfaces[r]
        rem = f
        sign = 1
        while rem:
            v = ctz64(rem)
            rem &= rem - 1
            c = idx[f & ~((<uint32_t>1) << v)]
            m[<size_t>r * ncols + c] = 1 if sign > 0 else p - 1
            sign = -sign
    for c in range(ncols):
        piv = -1
        for i in range(rank, nrows):
            if m[<size_t>i * ncols + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for i in range(ncols):
                fct = m[<size_t>piv * ncols + i]
                m[<size_t>piv * ncols + i] = m[<size_t>rank * ncols + i]
                m[<size_t>rank * ncols + i] = fct
        prow = m + <size_t>rank * ncols
        inv = inv_mod(prow[c], p)
        for i in range(rank + 1, nrows):
            row = m + <size_t>i * ncols
            if row[c]:
                fct = row[c] * inv % p
                for v in range(c, ncols):
                    if prow[v]:
                        row[v] = (row[v] - fct * prow[v]) % p
                        if row[v] < 0:
                            row[v] += p
        rank += 1
        if rank == nrows:
            break
    return rank


cdef int sweep(int n, const uint64_t* adj, int64_t p, int64_t* betti,
               uint8_t* indep, int32_t* idx, uint32_t* faces, uint32_t* ordered) noexcept nogil:
    cdef uint32_t full = ((<uint32_t>1) << n) - 1
    cdef uint32_t s, w, sub, rem
    cdef int v, k, j, top, nf, i
    cdef int cnt[MAXN + 2]
    cdef int off[MAXN + 2]
    cdef int pos[MAXN + 2]
    cdef int64_t ranks[MAXN + 3]
    cdef int64_t hom, eh, ef, sgn
    cdef bint iso
    cdef Work work
    cdef int status = 0
    work.mat = NULL
    work.matcap = 0
    work.pivot = NULL
    work.pivcap = 0
    work.dense = NULL
    work.densecap = 0

    indep[0] = 1
    for s in range(1, full + 1):
        v = ctz64(s)
        sub = s & (s - 1)
        indep[s] = indep[sub] and not (adj[v] & sub)

    for w in range(1, full + 1):
        iso = False
        rem = w
        while rem:
            v = ctz64(rem)
            rem &= rem - 1
            if not (adj[v] & w):
                iso = True
                break
        if iso:
            continue
        j = popcount64(w)
        for k in range(j + 2):
            cnt[k] = 0
        nf = 0
        sub = w
        while True:
            if indep[sub]:
                faces[nf] = sub
                nf += 1
                cnt[popcount64(sub)] += 1
            if sub == 0:
                break
            sub = (sub - 1) & w
        top = 0
        off[0] = 0
        for k in range(1, j + 2):
            off[k] = off[k - 1] + cnt[k - 1]
            if cnt[k]:
                top = k
        for k in range(j + 2):
            pos[k] = off[k]
        # faces were produced in decreasing mask order; fill backwards for increasing order
        for i in range(nf - 1, -1, -1):
            sub = faces[i]
            k = popcount64(sub)
            ordered[pos[k]] = sub
            idx[sub] = pos[k] - off[k]
            pos[k] += 1
        for k in range(top + 3):
            ranks[k] = 0
        ranks[1] = 1
        for k in range(2, top + 1):
            if p == 2:
                ranks[k] = rank_gf2(&work, ordered + off[k], cnt[k], cnt[k - 1], idx)
            else:
                ranks[k] = rank_mod_p(&work, ordered + off[k], cnt[k], cnt[k - 1], idx, p)
            if ranks[k] < 0:
                status = -2
                break
        if status:
            break
        eh = 0
        ef = 0
        sgn = -1
        for k in range(top + 1):
            hom = cnt[k] - ranks[k] - ranks[k + 1]
            eh += sgn * hom
            ef += sgn * cnt[k]
            sgn = -sgn
            if hom:
                betti[(j - k) * (n + 1) + j] += hom
        if eh != ef:
            status = -1
            break
    free(work.mat)
    free(work.pivot)
    free(work.dense)
    return status


def betti_sweep(int n, adj, int p):
    """Graded Betti numbers of ``R/I(G)`` by Hochster's formula over GF(p).

    Returns ``{(i, j): beta_ij}`` for the non-zero entries.
    """
    if n > MAX_SWEEP_VERTICES:
        raise ValueError(f"compiled sweep supports at most {MAX_SWEEP_VERTICES} vertices")
    cdef uint64_t cadj[MAXN]
    cdef size_t size = (<size_t>1) << n
    cdef int64_t* betti
    cdef uint8_t* indep
    cdef int32_t* idx
    cdef uint32_t* faces
    cdef uint32_t* ordered
    cdef int status, i, j
    for i in range(n):
        cadj[i] = <uint64_t>adj[i]
    betti = <int64_t*>calloc((n + 1) * (n + 1), sizeof(int64_t))
    indep = <uint8_t*>malloc(size * sizeof(uint8_t))
    idx = <int32_t*>malloc(size * sizeof(int32_t))
    faces = <uint32_t*>malloc(size * sizeof(uint32_t))
    ordered = <uint32_t*>malloc(size * sizeof(uint32_t))
    try:
        if betti == NULL or indep == NULL or idx == NULL or faces == NULL or ordered == NULL:
            raise MemoryError()
        with nogil:
            status = sweep(n, cadj, p, betti, indep, idx, faces, ordered)
        if status == -1:
            raise ArithmeticError("Euler characteristic mismatch in Hochster sweep")
        if status == -2:
            raise MemoryError()
        table = {(0, 0): 1}
        for i in range(n + 1):
            for j in range(n + 1):
                if betti[i * (n + 1) + j]:
                    table[(i, j)] = betti[i * (n + 1) + j]
        return table
    finally:
        free(betti)
        free(indep)
        free(idx)
        free(faces)
        free(ordered)
