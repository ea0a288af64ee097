# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled family scan kernel; mirrors pentaks._kernels._pure."""

import numpy as np

from libc.math cimport acos, cos, fabs, fmax, fmin, sin, sqrt

cdef double TWO_THIRDS_PI = 2.0943951023931953


cdef inline void _characteristic_roots(double overlap_sum, double * lam) noexcept nogil:
    # descending roots of x^3 - 5x^2 + (10-A)x + (3A-10); trig solve for
    # the isolated root (Newton-polished), deflated quadratic for the
    # close pair so double roots stay exact
    cdef double c1 = 10.0 - overlap_sum
    cdef double c0 = 3.0 * overlap_sum - 10.0
    cdef double p = 5.0 / 3.0 - overlap_sum
    cdef double q = 4.0 * overlap_sum / 3.0 - 70.0 / 27.0
    cdef double m, arg, phi, t0, t1, t2, isolated, slope, b_quad, c_quad, half
    cdef int i
    if p > -1e-14:
        lam[0] = lam[1] = lam[2] = 5.0 / 3.0
        return
    m = 2.0 * sqrt(-p / 3.0)
    arg = fmin(1.0, fmax(-1.0, 3.0 * q / (p * m)))
    phi = acos(arg) / 3.0
    t0 = m * cos(phi) + 5.0 / 3.0
    t1 = m * cos(phi - TWO_THIRDS_PI) + 5.0 / 3.0
    t2 = m * cos(phi - 2.0 * TWO_THIRDS_PI) + 5.0 / 3.0
    if t1 > t0:
        t0, t1 = t1, t0
    if t2 > t1:
        t1, t2 = t2, t1
    if t1 > t0:
        t0, t1 = t1, t0
    isolated = t0 if t0 - t1 >= t1 - t2 else t2
    for i in range(2):
        slope = 3.0 * isolated * isolated - 10.0 * isolated + c1
        if fabs(slope) < 1e-30:
            break
        isolated -= (
            isolated * isolated * isolated
            - 5.0 * isolated * isolated
            + c1 * isolated
            + c0
        ) / slope
    b_quad = isolated - 5.0
    c_quad = c1 + isolated * b_quad
    half = sqrt(fmax(b_quad * b_quad - 4.0 * c_quad, 0.0)) / 2.0
    t0 = isolated
    t1 = -b_quad / 2.0 + half
    t2 = -b_quad / 2.0 - half
    if t1 > t0:
        t0, t1 = t1, t0
    if t2 > t1:
        t1, t2 = t2, t1
    if t1 > t0:
        t0, t1 = t1, t0
    lam[0] = t0
    lam[1] = t1
    lam[2] = t2


def family_spectra(double[::1] a, double[::1] b, double[::1] mu, double[::1] nu):
    """Overlap sum and pentagram spectrum over family parameter arrays.

    The neighbour overlap moduli depend on (a, b) only; mu and nu are
    accepted for interface parity with the full construction.
    """
    cdef Py_ssize_t n = a.shape[0]
    overlap_out = np.empty(n, dtype=np.float64)
    lam_out = np.empty((n, 3), dtype=np.float64)
    cdef double[::1] overlap = overlap_out
    cdef double[:, ::1] lam = lam_out
    cdef Py_ssize_t i
    cdef double sa2, ca2, sb2, cb2, denom, total
    cdef double roots[3]
    with nogil:
        for i in range(n):
            sa2 = sin(a[i])
            sa2 = sa2 * sa2
            ca2 = 1.0 - sa2
            sb2 = sin(b[i])
            sb2 = sb2 * sb2
            cb2 = 1.0 - sb2
            denom = 1.0 - sa2 * sb2
            if denom > 1e-14:
                total = ca2 + sa2 * sb2 + cb2 + (ca2 * sb2 + sa2 * cb2) / denom
            else:
                total = 2.0
            overlap[i] = total
            _characteristic_roots(total, roots)
            lam[i, 0] = roots[0]
            lam[i, 1] = roots[1]
            lam[i, 2] = roots[2]
    return overlap_out, lam_out
