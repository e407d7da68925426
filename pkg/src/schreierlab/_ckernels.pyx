# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels; behaviour mirrors ``_pykernels`` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def assoc_violation(int[:, ::1] t):
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t x, y, z
    cdef int xy
    for x in range(n):
        for y in range(n):
            xy = t[x, y]
            for z in range(n):
                if t[xy, z] != t[x, t[y, z]]:
                    return (x, y, z)
    return None


cdef bint _is_canonical(int[:, ::1] t, int n, int[:, ::1] perms, int[::1] inv):
    cdef Py_ssize_t k, i, j
    cdef int v
    cdef bint done
    for k in range(perms.shape[0]):
        for i in range(n):
            inv[perms[k, i]] = i
        done = False
        for i in range(n):
            for j in range(n):
                v = perms[k, t[inv[i], inv[j]]]
                if v != t[i, j]:
                    if v < t[i, j]:
                        return False
                    done = True
                    break
            if done:
                break
    return True


cdef inline bint _filled(int p, int q, int c, int n):
    return p == 0 or q == 0 or (p - 1) * (n - 1) + (q - 1) <= c


cdef bint _partial_ok(int[:, ::1] t, int n, int c):
    cdef int x, y, z, u, v
    for x in range(1, n):
        for y in range(1, n):
            if not _filled(x, y, c, n):
                continue
            u = t[x, y]
            for z in range(1, n):
                if not _filled(y, z, c, n):
                    continue
                v = t[y, z]
                if _filled(u, z, c, n) and _filled(x, v, c, n):
                    if t[u, z] != t[x, v]:
                        return False
    return True


def enumerate_unital(int n, bint associative, int[:, ::1] perms):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] buf = np.zeros((n, n), dtype=np.int32)
    cdef int[:, ::1] t = buf
    cdef int[::1] inv = np.zeros(n, dtype=np.int32)
    cdef int ncell = (n - 1) * (n - 1)
    cdef int[::1] val = np.full(max(ncell, 1), -1, dtype=np.int32)
    cdef int i, c, ci, cj
    cdef bint check_iso = perms.shape[0] > 0
    out = []
    for i in range(n):
        t[0, i] = i
        t[i, 0] = i
    if ncell == 0:
        out.append(buf.copy())
        return np.array(out, dtype=np.int32).reshape(len(out), n, n)
    # iterative backtracking over cells in row-major order
    c = 0
    while c >= 0:
        ci = c // (n - 1) + 1
        cj = c % (n - 1) + 1
        val[c] += 1
        if val[c] >= n:
            val[c] = -1
            t[ci, cj] = 0
            c -= 1
            continue
        t[ci, cj] = val[c]
        if associative and not _partial_ok(t, n, c):
            continue
        if c == ncell - 1:
            if not check_iso or _is_canonical(t, n, perms, inv):
                out.append(buf.copy())
        else:
            c += 1
    return np.array(out, dtype=np.int32).reshape(len(out), n, n)


def hom_search(int[:, :, ::1] dbin, int[:, :, ::1] cbin, int[:, ::1] dun,
               int[:, ::1] cun, int[::1] fixed, int m):
    cdef int n = fixed.shape[0]
    cdef int nb = dbin.shape[0]
    cdef int nu = dun.shape[0]
    cdef int o, i, j, r, idx, k, lo, hi
    # constraint lists bucketed by the largest element index involved
    counts_b = np.zeros(n + 1, dtype=np.int32)
    counts_u = np.zeros(n + 1, dtype=np.int32)
    cdef int[::1] cb = counts_b
    cdef int[::1] cu = counts_u
    for o in range(nb):
        for i in range(n):
            for j in range(n):
                r = dbin[o, i, j]
                cb[max(i, j, r) + 1] += 1
    for o in range(nu):
        for i in range(n):
            r = dun[o, i]
            cu[max(i, r) + 1] += 1
    for idx in range(n):
        cb[idx + 1] += cb[idx]
        cu[idx + 1] += cu[idx]
    cdef int[:, ::1] bcon = np.zeros((max(cb[n], 1), 4), dtype=np.int32)
    cdef int[:, ::1] ucon = np.zeros((max(cu[n], 1), 3), dtype=np.int32)
    cdef int[::1] fill_b = np.array(counts_b[:n], dtype=np.int32)
    cdef int[::1] fill_u = np.array(counts_u[:n], dtype=np.int32)
    for o in range(nb):
        for i in range(n):
            for j in range(n):
                r = dbin[o, i, j]
                k = max(i, j, r)
                bcon[fill_b[k], 0] = o
                bcon[fill_b[k], 1] = i
                bcon[fill_b[k], 2] = j
                bcon[fill_b[k], 3] = r
                fill_b[k] += 1
    for o in range(nu):
        for i in range(n):
            r = dun[o, i]
            k = max(i, r)
            ucon[fill_u[k], 0] = o
            ucon[fill_u[k], 1] = i
            ucon[fill_u[k], 2] = r
            fill_u[k] += 1

    hbuf = np.full(n, -1, dtype=np.int32)
    cdef int[::1] h = hbuf
    cdef bint good
    out = []
    if n == 0:
        return np.zeros((1, 0), dtype=np.int32)
    idx = 0
    while idx >= 0:
        if fixed[idx] >= 0:
            if h[idx] == -1:
                h[idx] = fixed[idx]
            else:
                h[idx] = -1
                idx -= 1
                continue
        else:
            h[idx] += 1
            if h[idx] >= m:
                h[idx] = -1
                idx -= 1
                continue
        good = True
        for k in range(cb[idx], cb[idx + 1]):
            if cbin[bcon[k, 0], h[bcon[k, 1]], h[bcon[k, 2]]] != h[bcon[k, 3]]:
                good = False
                break
        if good:
            for k in range(cu[idx], cu[idx + 1]):
                if cun[ucon[k, 0], h[ucon[k, 1]]] != h[ucon[k, 2]]:
                    good = False
                    break
        if not good:
            if fixed[idx] >= 0:
                h[idx] = -1
                idx -= 1
            continue
        if idx == n - 1:
            out.append(hbuf.copy())
            if fixed[idx] >= 0:
                h[idx] = -1
                idx -= 1
        else:
            idx += 1
    return np.array(out, dtype=np.int32).reshape(len(out), n)


def closure(int[:, :, ::1] dbin, int[:, ::1] dun, cnp.uint8_t[::1] seed):
    cdef int n = seed.shape[0]
    res = np.array(seed, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mask = res
    cdef int o, i, j, r
    cdef bint changed = True
    while changed:
        changed = False
        for o in range(dbin.shape[0]):
            for i in range(n):
                if not mask[i]:
                    continue
                for j in range(n):
                    if not mask[j]:
                        continue
                    r = dbin[o, i, j]
                    if not mask[r]:
                        mask[r] = 1
                        changed = True
        for o in range(dun.shape[0]):
            for i in range(n):
                if mask[i]:
                    r = dun[o, i]
                    if not mask[r]:
                        mask[r] = 1
                        changed = True
    return res
