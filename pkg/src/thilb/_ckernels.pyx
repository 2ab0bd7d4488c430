# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular elimination; same contract as ``thilb._pykernels``."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


cdef inline int64_t _inv(int64_t a, int64_t p):
    cdef int64_t result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_mod_p(rows, Py_ssize_t ncols, int64_t p):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef int64_t f, inv, v
    cdef int64_t *m
    cdef int64_t *rowr
    cdef int64_t *rowi
    pivots = []
    if nrows == 0 or ncols == 0:
        return [], pivots
    m = <int64_t *> malloc(nrows * ncols * sizeof(int64_t))
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                v = row[j] % p
                m[i * ncols + j] = v
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    v = m[piv * ncols + j]
                    m[piv * ncols + j] = m[r * ncols + j]
                    m[r * ncols + j] = v
            rowr = m + r * ncols
            inv = _inv(rowr[c], p)
            if inv != 1:
                for j in range(c, ncols):
                    rowr[j] = rowr[j] * inv % p
            for i in range(nrows):
                if i == r:
                    continue
                rowi = m + i * ncols
                f = rowi[c]
                if f != 0:
                    for j in range(c, ncols):
                        if rowr[j] != 0:
                            rowi[j] = (rowi[j] - f * rowr[j]) % p
                            if rowi[j] < 0:
                                rowi[j] += p
            pivots.append(c)
            r += 1
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(m)
    return out, pivots


def rank_mod_p(rows, Py_ssize_t ncols, int64_t p):
    return len(rref_mod_p(rows, ncols, p)[1])
