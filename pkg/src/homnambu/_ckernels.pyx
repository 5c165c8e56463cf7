# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction kernel.

The int64 path runs in C with checked arithmetic; any overflow restarts the
reduction on Python integers, so results are exact either way and identical
to ``homnambu._pykernels.echelon``.
"""
from libc.stdlib cimport malloc, free

from homnambu._pykernels import echelon as _echelon_object

cdef extern from *:
    """
    static inline int hn_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int hn_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int hn_mul_ovf(long long a, long long b, long long *r) nogil
    int hn_sub_ovf(long long a, long long b, long long *r) nogil

cdef long long LIMIT = 1LL << 62


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _make_primitive(long long *row, Py_ssize_t n) nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(n):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(n):
            row[j] = row[j] // g


cdef int _reduce_fixed(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                       Py_ssize_t *pivots, Py_ssize_t *rank_out) nogil:
    """Returns 1 on overflow, 0 on success."""
    cdef Py_ssize_t rank = 0, c, p, i, j
    cdef long long a, b, g, ag, bg, u, v, tmp
    cdef long long *prow
    cdef long long *row
    for c in range(ncols):
        if rank == nrows:
            break
        p = rank
        while p < nrows and m[p * ncols + c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != rank:
            for j in range(ncols):
                tmp = m[p * ncols + j]
                m[p * ncols + j] = m[rank * ncols + j]
                m[rank * ncols + j] = tmp
        prow = m + rank * ncols
        if prow[c] < 0:
            for j in range(ncols):
                prow[j] = -prow[j]
        _make_primitive(prow, ncols)
        a = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = m + i * ncols
            b = row[c]
            if b == 0:
                continue
            g = _gcd(a, b)
            ag = a // g
            bg = b // g
            for j in range(ncols):
                if hn_mul_ovf(ag, row[j], &u):
                    return 1
                if hn_mul_ovf(bg, prow[j], &v):
                    return 1
                if hn_sub_ovf(u, v, &row[j]):
                    return 1
                if row[j] >= LIMIT or row[j] <= -LIMIT:
                    return 1
            _make_primitive(row, ncols)
        pivots[rank] = c
        rank += 1
    rank_out[0] = rank
    return 0


def echelon(rows, Py_ssize_t ncols):
    """Integer Gauss-Jordan elimination (see ``_pykernels.echelon``)."""
    cdef list kept = [r for r in rows if any(r)]
    cdef Py_ssize_t nrows = len(kept)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long *m
    cdef Py_ssize_t *pivots
    cdef int status
    if nrows == 0 or ncols == 0:
        return [], []
    for r in kept:
        for x in r:
            if x >= LIMIT or x <= -LIMIT:
                return _echelon_object(kept, ncols)
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    pivots = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if m == NULL or pivots == NULL:
        free(m)
        free(pivots)
        raise MemoryError()
    try:
        for i in range(nrows):
            r = kept[i]
            for j in range(ncols):
                m[i * ncols + j] = r[j]
        with nogil:
            status = _reduce_fixed(m, nrows, ncols, pivots, &rank)
        if status:
            return _echelon_object(kept, ncols)
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        return out, [pivots[i] for i in range(rank)]
    finally:
        free(m)
        free(pivots)
