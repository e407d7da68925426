"""Pure-Python implementations of the table kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same output order; ``schreierlab.kernels`` picks one at import.
Inputs are numpy int32 arrays; they are converted to nested lists up front
because element-wise numpy indexing is slow from Python.
"""

import numpy as np


def assoc_violation(table):
    t = table.tolist()
    n = len(t)
    for x in range(n):
        tx = t[x]
        for y in range(n):
            xy = tx[y]
            ty = t[y]
            txy = t[xy]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    return (x, y, z)
    return None


def _is_canonical(t, n, perms):
    for p in perms:
        inv = [0] * n
        for i in range(n):
            inv[p[i]] = i
        # compare p(T) with T in row-major order, stop at first difference
        done = False
        for i in range(n):
            row = t[inv[i]]
            ti = t[i]
            for j in range(n):
                v = p[row[inv[j]]]
                if v != ti[j]:
                    if v < ti[j]:
                        return False
                    done = True
                    break
            if done:
                break
    return True


def enumerate_unital(n, associative, perms):
    """All n x n tables with 0 as two-sided unit, in lexicographic order.

    ``perms`` is an (m, n) array of permutations fixing 0; when m > 0 only
    tables that are lexicographically least in their orbit are kept.
    """
    perm_list = [list(p) for p in perms.tolist()]
    t = [[0] * n for _ in range(n)]
    for i in range(n):
        t[0][i] = i
        t[i][0] = i
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    ncell = len(cells)
    order = {cell: c for c, cell in enumerate(cells)}
    out = []

    def filled(p, q, c):
        return p == 0 or q == 0 or order[(p, q)] <= c

    def partial_ok(c):
        for x in range(1, n):
            for y in range(1, n):
                if not filled(x, y, c):
                    continue
                u = t[x][y]
                for z in range(1, n):
                    if not filled(y, z, c):
                        continue
                    v = t[y][z]
                    if filled(u, z, c) and filled(x, v, c):
                        if t[u][z] != t[x][v]:
                            return False
        return True

    def rec(c):
        if c == ncell:
            if not perm_list or _is_canonical(t, n, perm_list):
                out.append([row[:] for row in t])
            return
        i, j = cells[c]
        for v in range(n):
            t[i][j] = v
            if associative and not partial_ok(c):
                continue
            rec(c + 1)
        t[i][j] = 0

    if ncell == 0:
        out.append([row[:] for row in t])
    else:
        rec(0)
    return np.array(out, dtype=np.int32).reshape(len(out), n, n)


def hom_search(dbin, cbin, dun, cun, fixed, m):
    """All maps h: dom -> cod preserving the given binary and unary tables.

    ``m`` is the codomain size; ``fixed[i] >= 0`` pins the image of
    element i. Results are listed in
    lexicographic order of the image vector.
    """
    db = dbin.tolist()
    cb = cbin.tolist()
    du = dun.tolist()
    cu = cun.tolist()
    fx = fixed.tolist()
    n = len(fx)
    # constraints are checked when their largest element index is assigned
    bin_at = [[] for _ in range(n)]
    for o, tab in enumerate(db):
        for i in range(n):
            for j in range(n):
                r = tab[i][j]
                bin_at[max(i, j, r)].append((o, i, j, r))
    un_at = [[] for _ in range(n)]
    for o, tab in enumerate(du):
        for i in range(n):
            r = tab[i]
            un_at[max(i, r)].append((o, i, r))
    h = [-1] * n
    out = []

    def ok(idx):
        for o, i, j, r in bin_at[idx]:
            if cb[o][h[i]][h[j]] != h[r]:
                return False
        for o, i, r in un_at[idx]:
            if cu[o][h[i]] != h[r]:
                return False
        return True

    def rec(idx):
        if idx == n:
            out.append(h[:])
            return
        cands = (fx[idx],) if fx[idx] >= 0 else range(m)
        for v in cands:
            h[idx] = v
            if ok(idx):
                rec(idx + 1)
        h[idx] = -1

    rec(0)
    return np.array(out, dtype=np.int32).reshape(len(out), n)


def closure(dbin, dun, seed):
    db = dbin.tolist()
    du = dun.tolist()
    mask = [bool(v) for v in seed.tolist()]
    n = len(mask)
    changed = True
    while changed:
        changed = False
        members = [i for i in range(n) if mask[i]]
        for tab in db:
            for i in members:
                row = tab[i]
                for j in members:
                    r = row[j]
                    if not mask[r]:
                        mask[r] = True
                        changed = True
        for tab in du:
            for i in members:
                r = tab[i]
                if not mask[r]:
                    mask[r] = True
                    changed = True
    return np.array(mask, dtype=np.uint8)
