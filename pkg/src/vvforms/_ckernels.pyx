# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled versions of the loops in ``_kernels.py`` (same signatures, same output)."""

import array
from itertools import permutations

from libcpp.unordered_map cimport unordered_map
from cython.operator cimport dereference as deref, preincrement as inc


cdef list _signed_perms(int dim):
    cdef list out = []
    cdef int a, b, inv
    for perm in permutations(range(1, dim + 1)):
        inv = 0
        for a in range(dim):
            for b in range(a + 1, dim):
                if perm[a] > perm[b]:
                    inv += 1
        out.append((perm, -1 if inv % 2 else 1))
    return out


def block_terms(blocks, int dim, int total):
    cdef list signed = _signed_perms(dim)
    cdef int nperm = len(signed)
    cdef int nblocks = len(blocks)
    cdef int t, u, sign, pos
    cdef list out = []
    if nblocks == 0:
        return [((), 1)]
    cdef int[:, :] slots = _as_int_matrix(blocks, dim)
    cdef int[:, :] perms = _as_int_matrix([p for p, _ in signed], dim)
    cdef int[:] signs = _as_int_vector([s for _, s in signed])
    cdef int[:] counter = _as_int_vector([0] * nblocks)
    cdef int[:] assignment = _as_int_vector([0] * total)
    while True:
        sign = 1
        for t in range(nblocks):
            sign *= signs[counter[t]]
            for u in range(dim):
                assignment[slots[t, u] - 1] = perms[counter[t], u]
        out.append((tuple(assignment), sign))
        pos = nblocks - 1
        while pos >= 0:
            counter[pos] += 1
            if counter[pos] < nperm:
                break
            counter[pos] = 0
            pos -= 1
        if pos < 0:
            break
    return out


def contract_terms(v_terms, w_terms, int n, int k, int r):
    cdef int nn = n * n
    cdef int nv = len(v_terms)
    cdef int nw = len(w_terms)
    cdef int p, q, t
    if nv == 0 or nw == 0:
        return {}
    cdef int[:, :] pairs = _as_int_matrix(
        [[(a[2 * t] - 1) * n + (a[2 * t + 1] - 1) for t in range(r)] for a, _ in v_terms], r
    )
    cdef int[:, :] wvals = _as_int_matrix([[(b[t] - 1) * nn for t in range(r)] for b, _ in w_terms], r)
    cdef int[:] vsign = _as_int_vector([s for _, s in v_terms])
    cdef int[:] wsign = _as_int_vector([s for _, s in w_terms])
    cdef int[:] key = _as_int_vector([0] * max(r, 1))
    cdef long long base = k * nn
    if base ** r >= 2 ** 62:
        return _contract_tuples(pairs, wvals, vsign, wsign, key, nv, nw, r)
    # monomials packed as base-``base`` integers of their sorted variable indices
    cdef unordered_map[long long, long long] acc
    cdef long long code
    for p in range(nv):
        for q in range(nw):
            for t in range(r):
                key[t] = wvals[q, t] + pairs[p, t]
            _sort(key, r)
            code = 0
            for t in range(r):
                code = code * base + key[t]
            acc[code] += vsign[p] * wsign[q]
    out = {}
    cdef unordered_map[long long, long long].iterator it = acc.begin()
    while it != acc.end():
        if deref(it).second:
            code = deref(it).first
            digits = [0] * r
            for t in range(r - 1, -1, -1):
                digits[t] = code % base
                code //= base
            out[tuple(digits)] = deref(it).second
        inc(it)
    return out


cdef inline void _sort(int[:] key, int r):
    # insertion sort; r is small
    cdef int t, u, x
    for t in range(1, r):
        x = key[t]
        u = t - 1
        while u >= 0 and key[u] > x:
            key[u + 1] = key[u]
            u -= 1
        key[u + 1] = x


cdef dict _contract_tuples(int[:, :] pairs, int[:, :] wvals, int[:] vsign, int[:] wsign, int[:] key, int nv, int nw, int r):
    cdef int p, q, t
    cdef dict acc = {}
    for p in range(nv):
        for q in range(nw):
            for t in range(r):
                key[t] = wvals[q, t] + pairs[p, t]
            _sort(key, r)
            k_obj = tuple(key[:r])
            acc[k_obj] = acc.get(k_obj, 0) + vsign[p] * wsign[q]
    return {kk: c for kk, c in acc.items() if c}


cdef _as_int_matrix(rows, int width):
    flat = array.array("i")
    count = 0
    for row in rows:
        flat.extend(row)
        count += 1
    return memoryview(flat).cast("B").cast("i", [count, width])


cdef _as_int_vector(values):
    return array.array("i", values)
