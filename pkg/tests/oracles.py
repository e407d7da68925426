"""Brute-force reference computations that read raw tables only.

Nothing here calls the library's algorithms; the tests compare library
output against these.
"""

from __future__ import annotations

import itertools


def ops(A):
    """(symbol, arity, table) for every operation of A."""
    return [(sym, A.signature.arity(sym), tab) for sym, tab in A.tables]


def saturate(A, seed):
    members = set(seed) | {A.zero}
    while True:
        new = set(members)
        for _, arity, tab in ops(A):
            for args in itertools.product(sorted(members), repeat=arity):
                v = tab
                for a in args:
                    v = v[a]
                new.add(v)
        if new == members:
            return members
        members = new


def is_hom_map(A, B, m):
    if m[A.zero] != B.zero:
        return False
    for (sym, arity, ta) in ops(A):
        tb = B.table(sym)
        for args in itertools.product(range(A.size), repeat=arity):
            va, vb = ta, tb
            for a in args:
                va = va[a]
                vb = vb[m[a]]
            if m[va] != vb:
                return False
    return True


def all_homs(A, B):
    return [m for m in itertools.product(range(B.size), repeat=A.size) if is_hom_map(A, B, m)]


def kernel_members(p):
    f, Y = p.f.map, p.Y
    return [x for x in range(p.X.size) if f[x] == Y.zero]


def strong(p):
    s = p.s.map
    seed = set(kernel_members(p)) | set(s)
    return len(saturate(p.X, seed)) == p.X.size


def unique_decomposition(p, side="right"):
    """x ↦ the unique kernel element a with x = a + s f(x) (right) or
    x = s f(x) + a (left), as elements of X; None if some x fails."""
    X, f, s = p.X, p.f.map, p.s.map
    add = X.plus
    K = kernel_members(p)
    q = []
    for x in range(X.size):
        y = s[f[x]]
        cands = [a for a in K if (add[a][y] if side == "right" else add[y][a]) == x]
        if len(cands) != 1:
            return None
        q.append(cands[0])
    return tuple(q)


def loop_axioms(X, table, side):
    add = X.plus
    n = X.size
    if side == "right":
        return all(add[table[x][y]][y] == x and table[add[x][y]][y] == x
                   for x in range(n) for y in range(n))
    return all(add[x][table[x][y]] == y and table[x][add[x][y]] == y
               for x in range(n) for y in range(n))


def has_inverses(M):
    add = M.plus
    return all(any(add[x][y] == M.zero and add[y][x] == M.zero for y in range(M.size))
               for x in range(M.size))


def associative(table):
    n = len(table)
    return all(table[table[x][y]][z] == table[x][table[y][z]]
               for x in range(n) for y in range(n) for z in range(n))


def count_unital(n, assoc):
    """Number of labelled unital tables on {0..n-1} with unit 0."""
    free = [(i, j) for i in range(1, n) for j in range(1, n)]
    total = 0
    for vals in itertools.product(range(n), repeat=len(free)):
        t = [[j if i == 0 else (i if j == 0 else 0) for j in range(n)] for i in range(n)]
        for (i, j), v in zip(free, vals):
            t[i][j] = v
        if not assoc or associative(t):
            total += 1
    return total


def iso_classes(tables):
    """Number of isomorphism classes (permutations fixing 0) among tables."""
    seen = set()
    count = 0
    for t in tables:
        n = len(t)
        key = tuple(map(tuple, t))
        if key in seen:
            continue
        count += 1
        for perm in itertools.permutations(range(1, n)):
            pi = (0,) + perm
            inv = [0] * n
            for i, v in enumerate(pi):
                inv[v] = i
            img = tuple(tuple(pi[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
            seen.add(img)
    return count
