"""Pure-Python versions of the hot kernels.

Behaviour is identical to the compiled ``_kernels`` module; this one is used
when the extension is not built or ``CWINV_PURE_PYTHON`` is set.
"""

from __future__ import annotations

MAX_GENERATORS = 256


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask):
    return bin(mask).count("1")


# -- canonical labelling -----------------------------------------------------


def refine(adj, cells):
    """Refine an ordered partition (list of masks) to the coarsest equitable one.

    Fragments of a split cell are ordered by neighbour count into the splitter,
    ascending, so the result is label-invariant.
    """
    cells = list(cells)
    s = 0
    while s < len(cells):
        splitter = cells[s]
        split = False
        out = []
        for c in cells:
            if c & (c - 1) == 0:
                out.append(c)
                continue
            groups = {}
            for v in _bits(c):
                k = _popcount(adj[v] & splitter)
                groups[k] = groups.get(k, 0) | (1 << v)
            if len(groups) == 1:
                out.append(c)
            else:
                split = True
                out.extend(groups[k] for k in sorted(groups))
        if split:
            cells = out
            s = 0
        else:
            s += 1
    return cells


def _certificate(adj, lab):
    inv = [0] * len(lab)
    for i, v in enumerate(lab):
        inv[v] = i
    rows = []
    for v in lab:
        r = 0
        for u in _bits(adj[v]):
            r |= 1 << inv[u]
        rows.append(r)
    return tuple(rows)


def canonical_labeling(n, adj, colors=None):
    """Return ``lab`` with ``lab[i]`` = original vertex placed at canonical position ``i``.

    ``colors`` (optional) is a sequence of non-negative ints; the initial
    partition groups vertices by colour in increasing colour order.
    """
    if n == 0:
        return []
    if colors is None:
        cells = [(1 << n) - 1]
    else:
        bycol = {}
        for v, c in enumerate(colors):
            bycol[c] = bycol.get(c, 0) | (1 << v)
        cells = [bycol[c] for c in sorted(bycol)]
    state = {"best": None, "lab": None, "path": None}
    gens = []

    def orbit_root(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def search(cells, fixed):
        """Returns a depth to unwind to, or None to continue normally."""
        cells = refine(adj, cells)
        target = -1
        for i, c in enumerate(cells):
            if c & (c - 1):
                target = i
                break
        if target < 0:
            lab = [c.bit_length() - 1 for c in cells]
            cert = _certificate(adj, lab)
            best = state["best"]
            if best is None or cert > best:
                state["best"], state["lab"], state["path"] = cert, lab, list(fixed)
                return None
            if cert != best:
                return None
            perm = [0] * n
            for a, b in zip(state["lab"], lab):
                perm[a] = b
            if len(gens) < MAX_GENERATORS:
                gens.append(perm)
            # the automorphism carries the best path onto this one, so the
            # subtree below the divergence point repeats one already seen
            path = state["path"]
            if len(path) == len(fixed) and all(perm[a] == b for a, b in zip(path, fixed)):
                d = 0
                while path[d] == fixed[d]:
                    d += 1
                return d
            return None
        cell = cells[target]
        depth = len(fixed)
        tried = []
        parent = list(range(n))
        seen = 0
        for v in _bits(cell):
            if tried:
                for g in gens[seen:]:
                    if all(g[x] == x for x in fixed):
                        for x in range(n):
                            a, b = orbit_root(parent, x), orbit_root(parent, g[x])
                            if a != b:
                                parent[a] = b
                seen = len(gens)
                root = orbit_root(parent, v)
                if any(orbit_root(parent, u) == root for u in tried):
                    continue
            tried.append(v)
            child = cells[:target] + [1 << v, cell & ~(1 << v)] + cells[target + 1:]
            jump = search(child, fixed + [v])
            if jump is not None and jump < depth:
                return jump
        return None

    search(cells, [])
    return state["lab"]


# -- Hochster sweep ----------------------------------------------------------


def _rank_gf2(rows):
    rank = 0
    pivots = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank


def _rank_mod_p(rows, ncols, p):
    mat = [list(r) for r in rows]
    rank = 0
    nrows = len(mat)
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if mat[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = pow(prow[col], p - 2, p)
        for i in range(rank + 1, nrows):
            row = mat[i]
            f = row[col] % p
            if f:
                f = f * inv % p
                for c in range(col, ncols):
                    row[c] = (row[c] - f * prow[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def reduced_homology(adj, w, p):
    """Ranks of reduced homology ``H~_q`` (q = -1, 0, ...) of the independence
    complex of the induced subgraph on ``w`` over GF(p).

    Returns ``(ranks, fvec)`` with ``ranks[k]`` = rank of ``H~_{k-1}`` and
    ``fvec[k]`` = number of independent subsets of ``w`` of size ``k``.
    """
    by_size = [[0]]
    stack = [(0, w)]
    # independent subsets of w, generated by extending with larger vertices
    faces = [0]
    while stack:
        face, cand = stack.pop()
        for v in _bits(cand):
            nf = face | (1 << v)
            faces.append(nf)
            rest = cand & ~((2 << v) - 1) & ~adj[v]
            if rest:
                stack.append((nf, rest))
    for f in faces[1:]:
        k = _popcount(f)
        while len(by_size) <= k:
            by_size.append([])
        by_size[k].append(f)
    for lst in by_size:
        lst.sort()
    index = [{f: i for i, f in enumerate(lst)} for lst in by_size]
    top = len(by_size) - 1
    ranks = [0] * (top + 2)
    if top >= 1:
        ranks[1] = 1
    for k in range(2, top + 1):
        lower = index[k - 1]
        if p == 2:
            rows = []
            for f in by_size[k]:
                r = 0
                for v in _bits(f):
                    r |= 1 << lower[f & ~(1 << v)]
                rows.append(r)
            ranks[k] = _rank_gf2(rows)
        else:
            ncols = len(by_size[k - 1])
            rows = []
            for f in by_size[k]:
                row = [0] * ncols
                sign = 1
                for v in _bits(f):
                    row[lower[f & ~(1 << v)]] = sign % p
                    sign = -sign
                rows.append(row)
            ranks[k] = _rank_mod_p(rows, ncols, p)
    fvec = [len(lst) for lst in by_size]
    homology = [fvec[k] - ranks[k] - ranks[k + 1] for k in range(top + 1)]
    return homology, fvec


def betti_sweep(n, adj, p):
    """Graded Betti numbers of ``R/I(G)`` by Hochster's formula over GF(p).

    Returns a dict ``{(i, j): beta_ij}`` of the non-zero entries.  Raises
    ``ArithmeticError`` if the Euler-characteristic check fails for some W.
    """
    adj = list(adj)
    table = {(0, 0): 1}
    for w in range(1, 1 << n):
        # a vertex isolated in G[W] is a cone point: Ind(G[W]) is acyclic
        iso = False
        for v in _bits(w):
            if not adj[v] & w:
                iso = True
                break
        if iso:
            continue
        homology, fvec = reduced_homology(adj, w, p)
        euler_h = sum((-1) ** (k - 1) * h for k, h in enumerate(homology))
        euler_f = sum((-1) ** (k - 1) * f for k, f in enumerate(fvec))
        if euler_h != euler_f:
            raise ArithmeticError(f"Euler characteristic mismatch on W={w:#x}")
        j = _popcount(w)
        for k, h in enumerate(homology):
            if h:
                key = (j - k, j)
                table[key] = table.get(key, 0) + h
    return table
