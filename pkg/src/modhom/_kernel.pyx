# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking kernel; same contract as ``_kernel_py.count_assignments``
restricted to targets with at most 64 vertices and counts below 2**63."""
from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long)
    int __builtin_ctzll(unsigned long long)


def count_assignments(list domains, list back, list adj, bint injective=False):
    cdef Py_ssize_t n = len(domains)
    cdef Py_ssize_t h = len(adj)
    if n == 0:
        return 1
    if h > 64:
        raise ValueError("native kernel supports at most 64 target vertices")
    cdef Py_ssize_t nb = 0
    cdef Py_ssize_t i, k
    for i in range(n):
        nb += len(back[i])
    cdef uint64_t *dom = <uint64_t *> malloc(n * sizeof(uint64_t))
    cdef uint64_t *cand = <uint64_t *> malloc(n * sizeof(uint64_t))
    cdef uint64_t *used = <uint64_t *> malloc((n + 1) * sizeof(uint64_t))
    cdef uint64_t *am = <uint64_t *> malloc((h + 1) * sizeof(uint64_t))
    cdef int *assign = <int *> malloc(n * sizeof(int))
    cdef int *boff = <int *> malloc((n + 1) * sizeof(int))
    cdef int *bidx = <int *> malloc((nb + 1) * sizeof(int))
    if not (dom and cand and used and am and assign and boff and bidx):
        raise MemoryError()
    cdef uint64_t total = 0
    cdef uint64_t c, low
    cdef Py_ssize_t last = n - 1
    try:
        for i in range(h):
            am[i] = <uint64_t> adj[i]
        k = 0
        for i in range(n):
            dom[i] = <uint64_t> domains[i]
            boff[i] = k
            for j in back[i]:
                bidx[k] = j
                k += 1
        boff[n] = k
        used[0] = 0
        i = 0
        cand[0] = dom[0]
        while True:
            if i == last:
                total += __builtin_popcountll(cand[i])
                i -= 1
                if i < 0:
                    break
                continue
            if cand[i] == 0:
                i -= 1
                if i < 0:
                    break
                continue
            low = cand[i] & (~cand[i] + 1)
            cand[i] ^= low
            assign[i] = __builtin_ctzll(low)
            used[i + 1] = used[i] | low
            i += 1
            c = dom[i]
            for k in range(boff[i], boff[i + 1]):
                c &= am[assign[bidx[k]]]
            if injective:
                c &= ~used[i]
            cand[i] = c
    finally:
        free(dom)
        free(cand)
        free(used)
        free(am)
        free(assign)
        free(boff)
        free(bidx)
    return total
