# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot numerical kernels.

Mirrors the public surface of ``_pykernels``: the confluent hypergeometric
series accumulator, Sturm pivot counting / eigenvalue bisection, and the
shifted tridiagonal solve used by inverse iteration.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs

SERIES_OK = 0
SERIES_CAP = 1
SERIES_OVERFLOW = 2

cdef double _TERM_TOL = 1e-16
cdef double _BIG = 1e290


def kummer_series(double a, double b, double y, int max_terms=10000):
    """Partial sum of sum_s (a)_s/(b)_s y^s/s! with cancellation tracking."""
    cdef double t = 1.0
    cdef double s = 1.0
    cdef double s_abs = 1.0
    cdef double floor_s
    cdef int small = 0
    cdef int n
    for n in range(1, max_terms + 1):
        t *= (a + n - 1.0) * y / ((b + n - 1.0) * n)
        if t == 0.0:
            return s, s_abs, n, SERIES_OK
        s += t
        s_abs += fabs(t)
        if s_abs > _BIG or s_abs != s_abs:
            return s, s_abs, n, SERIES_OVERFLOW
        floor_s = fabs(s)
        if floor_s < 1e-300:
            floor_s = 1e-300
        if fabs(t) < _TERM_TOL * floor_s:
            small += 1
            if small >= 3:
                return s, s_abs, n, SERIES_OK
        else:
            small = 0
    return s, s_abs, max_terms, SERIES_CAP


cdef Py_ssize_t _count(double[::1] d, double[::1] e2, double x, double piv) nogil:
    cdef Py_ssize_t i, count = 0
    cdef double q = d[0] - x
    if fabs(q) < piv:
        q = -piv
    if q < 0.0:
        count += 1
    for i in range(1, d.shape[0]):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < piv:
            q = -piv
        if q < 0.0:
            count += 1
    return count


cdef double _pivmin(double[::1] e2):
    cdef Py_ssize_t i
    cdef double m = 1.0
    for i in range(e2.shape[0]):
        if e2[i] > m:
            m = e2[i]
    return m * 1e-292


def sturm_count(d, e, double x):
    """Number of eigenvalues of the symmetric tridiagonal (d, e) below x."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] e2 = np.ascontiguousarray(e, dtype=np.float64) ** 2
    return int(_count(dv, e2, x, _pivmin(e2)))


def sturm_lowest(d, e, int k):
    """Lowest k eigenvalues by per-index Sturm bisection."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=np.float64)
    cdef double[::1] e2 = np.asarray(ev) ** 2
    cdef double piv = _pivmin(e2)
    cdef Py_ssize_t n = dv.shape[0]
    cdef double glo = dv[0], ghi = dv[0], r
    cdef Py_ssize_t i
    for i in range(n):
        r = 0.0
        if i > 0:
            r += fabs(ev[i - 1])
        if i < n - 1:
            r += fabs(ev[i])
        if dv[i] - r < glo:
            glo = dv[i] - r
        if dv[i] + r > ghi:
            ghi = dv[i] + r
    out = np.empty(k, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double lo, hi, mid, tol
    cdef Py_ssize_t j, it
    with nogil:
        for j in range(k):
            lo = glo
            hi = ghi
            for it in range(210):
                tol = fabs(lo)
                if fabs(hi) > tol:
                    tol = fabs(hi)
                if tol < 1.0:
                    tol = 1.0
                if hi - lo <= 1e-14 * tol:
                    break
                mid = 0.5 * (lo + hi)
                if _count(dv, e2, mid, piv) >= j + 1:
                    hi = mid
                else:
                    lo = mid
            ov[j] = 0.5 * (lo + hi)
    return out


def tridiag_shifted_solve(d, e, double shift, rhs):
    """Solve (T - shift*I) x = rhs by the Thomas algorithm, clamped pivots."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(rhs, dtype=np.float64)
    cdef Py_ssize_t n = dv.shape[0]
    c = np.empty(n - 1, dtype=np.float64)
    g = np.empty(n, dtype=np.float64)
    x = np.empty(n, dtype=np.float64)
    cdef double[::1] cv = c
    cdef double[::1] gv = g
    cdef double[::1] xv = x
    cdef double piv
    cdef Py_ssize_t i
    with nogil:
        piv = dv[0] - shift
        if fabs(piv) < 1e-290:
            piv = 1e-290
        cv[0] = ev[0] / piv
        gv[0] = bv[0] / piv
        for i in range(1, n):
            piv = dv[i] - shift - ev[i - 1] * cv[i - 1]
            if fabs(piv) < 1e-290:
                piv = 1e-290
            if i < n - 1:
                cv[i] = ev[i] / piv
            gv[i] = (bv[i] - ev[i - 1] * gv[i - 1]) / piv
        xv[n - 1] = gv[n - 1]
        for i in range(n - 2, -1, -1):
            xv[i] = gv[i] - cv[i] * xv[i + 1]
    return x
