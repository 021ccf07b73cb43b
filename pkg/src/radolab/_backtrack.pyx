# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking kernel for solution-free colouring search.

Mirrors the pure-Python twin exactly; see that module for the algorithm
description and the meaning of the flattened constraint arrays.
"""

import numpy as np

FOUND = 0
REFUTED = 1
EXHAUSTED = 2


def search(int n, int r, con_start, con_cnt, con_off, con_len, elems,
           long long budget):
    cdef long[::1] cs = np.ascontiguousarray(con_start, dtype=np.int64)
    cdef long[::1] cc = np.ascontiguousarray(con_cnt, dtype=np.int64)
    cdef long[::1] co = np.ascontiguousarray(con_off, dtype=np.int64)
    cdef long[::1] cl = np.ascontiguousarray(con_len, dtype=np.int64)
    cdef long[::1] el = np.ascontiguousarray(elems, dtype=np.int64)
    cdef long[::1] col = np.zeros(n + 1, dtype=np.int64)
    cdef long[::1] max_used = np.zeros(n + 2, dtype=np.int64)
    cdef long[::1] next_try = np.ones(n + 2, dtype=np.int64)
    cdef int pos = 1
    cdef long long nodes = 0
    cdef long c, t, j, limit
    cdef bint ok, conflict
    while True:
        if pos > n:
            return FOUND, [col[i] for i in range(1, n + 1)], nodes
        c = next_try[pos]
        limit = max_used[pos] + 1
        if limit > r:
            limit = r
        if c > limit:
            pos -= 1
            if pos == 0:
                return REFUTED, None, nodes
            col[pos] = 0
            continue
        next_try[pos] = c + 1
        nodes += 1
        if nodes > budget:
            return EXHAUSTED, None, nodes
        ok = True
        for t in range(cs[pos], cs[pos] + cc[pos]):
            conflict = True
            for j in range(co[t], co[t] + cl[t]):
                if col[el[j]] != c:
                    conflict = False
                    break
            if conflict:
                ok = False
                break
        if ok:
            col[pos] = c
            max_used[pos + 1] = max_used[pos] if max_used[pos] >= c else c
            next_try[pos + 1] = 1
            pos += 1
