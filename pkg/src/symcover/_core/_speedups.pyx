# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled orbit-partition kernel; mirrors _pure.partition exactly."""

import numpy as np

cimport numpy as cnp


cdef inline Py_ssize_t _find(long long[::1] parent, Py_ssize_t x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef Py_ssize_t _bsearch(int[:, ::1] states, int[::1] img) nogil:
    cdef Py_ssize_t lo = 0, hi = states.shape[0], mid, k
    cdef Py_ssize_t L = states.shape[1]
    cdef int cmp
    while lo < hi:
        mid = (lo + hi) // 2
        cmp = 0
        for k in range(L):
            if states[mid, k] < img[k]:
                cmp = -1
                break
            elif states[mid, k] > img[k]:
                cmp = 1
                break
        if cmp == 0:
            return mid
        elif cmp < 0:
            lo = mid + 1
        else:
            hi = mid
    return -1


def partition_kernel(
    int[:, ::1] states,
    int[::1] prog,
    int[::1] prog_off,
    int[:, ::1] table,
    int[::1] inv,
    int identity,
):
    cdef Py_ssize_t n = states.shape[0]
    cdef Py_ssize_t L = states.shape[1]
    cdef Py_ssize_t nmoves = prog_off.shape[0]
    cdef cnp.ndarray[long long, ndim=1] parent_arr = np.arange(n, dtype=np.int64)
    cdef long long[::1] parent = parent_arr
    cdef cnp.ndarray[int, ndim=1] img_arr = np.empty(L, dtype=np.int32)
    cdef int[::1] img = img_arr
    cdef Py_ssize_t i, m, t, o, j, ri, rj
    cdef Py_ssize_t p
    cdef int nout, slot, ntok, kind, v, val, op
    cdef bint missing = False

    with nogil:
        for i in range(n):
            for m in range(nmoves):
                p = prog_off[m]
                for t in range(L):
                    img[t] = states[i, t]
                nout = prog[p]
                p += 1
                for o in range(nout):
                    slot = prog[p]
                    ntok = prog[p + 1]
                    p += 2
                    val = identity
                    for t in range(ntok):
                        kind = prog[p]
                        v = prog[p + 1]
                        p += 2
                        if kind == 0:
                            op = states[i, v]
                        elif kind == 1:
                            op = inv[states[i, v]]
                        else:
                            op = v
                        val = table[val, op]
                    img[slot] = val
                j = _bsearch(states, img)
                if j < 0:
                    missing = True
                    break
                ri = _find(parent, i)
                rj = _find(parent, j)
                if ri != rj:
                    if ri < rj:
                        parent[rj] = ri
                    else:
                        parent[ri] = rj
            if missing:
                break

    if missing:
        return None
    cdef cnp.ndarray[long long, ndim=1] labels = np.empty(n, dtype=np.int64)
    for i in range(n):
        labels[i] = _find(parent, i)
    return labels
