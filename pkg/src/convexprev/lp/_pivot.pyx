# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simplex kernel on integer tableaux.

Same contract as ``_pivot_py``.  Entries are held as C ``long long``;
each elimination step is computed in 128-bit arithmetic and checked
before it is stored.  When a value leaves the 64-bit range the current
(consistent) state is written back and the pure-Python kernel finishes
the run with unbounded integers.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from libc.limits cimport LLONG_MIN

from . import _pivot_py

cdef extern from *:
    """
    #include <limits.h>
    static inline int cp_update(long long x, long long p, long long a,
                                long long y, long long d, long long *out)
    {
        __int128 num = (__int128)x * p - (__int128)a * y;
        __int128 q = num / d;
        if (q > LLONG_MAX || q < LLONG_MIN) return 1;
        *out = (long long)q;
        return 0;
    }
    static inline int cp_scale(long long x, long long p, long long d,
                               long long *out)
    {
        __int128 q = ((__int128)x * p) / d;
        if (q > LLONG_MAX || q < LLONG_MIN) return 1;
        *out = (long long)q;
        return 0;
    }
    static inline int cp_less(long long a, long long b, long long c,
                              long long d)
    {
        return (__int128)a * b < (__int128)c * d;
    }
    static inline int cp_equal(long long a, long long b, long long c,
                               long long d)
    {
        return (__int128)a * b == (__int128)c * d;
    }
    """
    int cp_update(long long x, long long p, long long a, long long y,
                  long long d, long long *out) nogil
    int cp_scale(long long x, long long p, long long d, long long *out) nogil
    int cp_less(long long a, long long b, long long c, long long d) nogil
    int cp_equal(long long a, long long b, long long c, long long d) nogil

OPTIMAL = _pivot_py.OPTIMAL
UNBOUNDED = _pivot_py.UNBOUNDED
pivot = _pivot_py.pivot


cdef int _pivot_c(long long *src, long long *dst, long long *basis,
                  int nrows, int ncols, long long D, int r, int c,
                  long long *newD) nogil:
    """Eliminate column c using row r from src into dst; 1 on overflow."""
    cdef long long p = src[r * ncols + c]
    cdef long long a
    cdef int i, j
    cdef long long *si
    cdef long long *di
    cdef long long *sr = src + r * ncols
    for i in range(nrows):
        si = src + i * ncols
        di = dst + i * ncols
        if i == r:
            memcpy(di, si, ncols * sizeof(long long))
            continue
        a = si[c]
        if a != 0:
            for j in range(ncols):
                if cp_update(si[j], p, a, sr[j], D, di + j):
                    return 1
        elif p != D:
            for j in range(ncols):
                if cp_scale(si[j], p, D, di + j):
                    return 1
        else:
            memcpy(di, si, ncols * sizeof(long long))
    if p < 0:
        if p == LLONG_MIN:
            return 1
        for i in range(nrows * ncols):
            if dst[i] == LLONG_MIN:
                return 1
            dst[i] = -dst[i]
        p = -p
    newD[0] = p
    return 0


def simplex(T, basis, D, int price, int n_enter, int m):
    """Bland's-rule simplex; see ``_pivot_py.simplex`` for the contract."""
    cdef int nrows = len(T)
    cdef int ncols = len(T[0]) if nrows else 0
    cdef int i, j, k, best, status
    cdef long long cD, newD
    cdef long long *buf
    cdef long long *other
    cdef long long *tmp
    cdef long long *bas
    cdef long long *row
    cdef long long a
    cdef int rhs = ncols - 1

    try:
        cD = D
    except OverflowError:
        return _pivot_py.simplex(T, basis, D, price, n_enter, m)

    buf = <long long *> malloc(nrows * ncols * sizeof(long long))
    other = <long long *> malloc(nrows * ncols * sizeof(long long))
    bas = <long long *> malloc((m + 1) * sizeof(long long))
    if buf == NULL or other == NULL or bas == NULL:
        free(buf)
        free(other)
        free(bas)
        raise MemoryError()
    try:
        try:
            for i in range(nrows):
                Ti = T[i]
                for j in range(ncols):
                    buf[i * ncols + j] = Ti[j]
        except OverflowError:
            return _pivot_py.simplex(T, basis, D, price, n_enter, m)
        for i in range(m):
            bas[i] = basis[i]

        status = -1
        while True:
            row = buf + price * ncols
            j = -1
            for k in range(n_enter):
                if row[k] < 0:
                    j = k
                    break
            if j < 0:
                status = OPTIMAL
                break
            best = -1
            for i in range(m):
                a = buf[i * ncols + j]
                if a > 0:
                    if best < 0:
                        best = i
                        continue
                    if cp_less(buf[i * ncols + rhs], buf[best * ncols + j],
                               buf[best * ncols + rhs], a):
                        best = i
                    elif (cp_equal(buf[i * ncols + rhs], buf[best * ncols + j],
                                   buf[best * ncols + rhs], a)
                          and bas[i] < bas[best]):
                        best = i
            if best < 0:
                status = UNBOUNDED
                break
            if _pivot_c(buf, other, bas, nrows, ncols, cD, best, j, &newD):
                status = -1
                break
            bas[best] = j
            cD = newD
            tmp = buf
            buf = other
            other = tmp

        for i in range(nrows):
            T[i] = [buf[i * ncols + k] for k in range(ncols)]
        for i in range(m):
            basis[i] = bas[i]
        if status < 0:
            return _pivot_py.simplex(T, basis, cD, price, n_enter, m)
        return status, cD, (j if status == UNBOUNDED else -1)
    finally:
        free(buf)
        free(other)
        free(bas)
