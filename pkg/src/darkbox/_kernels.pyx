# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled potential-matrix assembly.

Same arithmetic as ``darkbox._fallback``; see there for the reduction of
the line integrals to the tables sin(j pi c), cos(j pi c).
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, M_PI

cnp.import_array()


cdef inline double _u(long p, long q, const double[::1] sn, const double[::1] cs,
                      long off, double gap) noexcept nogil:
    cdef double sp, sq, t
    if (p + q) & 1:
        return 0.0
    sp = sn[p + off]
    sq = sn[q + off]
    if p == q:
        t = gap * cs[q + off]
    else:
        t = (sq - sp) / ((p - q) * M_PI)
    if p == -q:
        t = t + gap * cs[q + off]
    else:
        t = t - (sq + sp) / ((p + q) * M_PI)
    return t


cdef inline double _s(long a, long ap, long b, long bp, const double[::1] sn,
                      const double[::1] cs, long off, double gap) noexcept nogil:
    return (_u(a - ap, b - bp, sn, cs, off, gap) - _u(a - ap, b + bp, sn, cs, off, gap)
            - _u(a + ap, b - bp, sn, cs, off, gap) + _u(a + ap, b + bp, sn, cs, off, gap))


def potential_matrix(const long[::1] ns, const long[::1] ms, int sigma, double c,
                     const double[::1] sn, const double[::1] cs, long off):
    cdef Py_ssize_t size = ns.shape[0]
    cdef Py_ssize_t i, j
    cdef long n, m, n2, m2
    cdef double tot, di, dj, gap = 1.0 - c
    out = np.empty((size, size), dtype=np.float64)
    cdef double[:, ::1] V = out
    with nogil:
        for i in range(size):
            n = ns[i]
            m = ms[i]
            di = 2.0 if n == m else 1.0
            for j in range(i, size):
                n2 = ns[j]
                m2 = ms[j]
                if (n + m + n2 + m2) & 1:
                    V[i, j] = 0.0
                    V[j, i] = 0.0
                    continue
                dj = 2.0 if n2 == m2 else 1.0
                tot = (_s(n, n2, m, m2, sn, cs, off, gap)
                       + sigma * _s(m, n2, m2, n, sn, cs, off, gap)
                       + sigma * _s(m2, n, m, n2, sn, cs, off, gap)
                       + _s(m, m2, n, n2, sn, cs, off, gap))
                tot = tot / (2.0 * sqrt(di * dj))
                V[i, j] = tot
                V[j, i] = tot
    return out
