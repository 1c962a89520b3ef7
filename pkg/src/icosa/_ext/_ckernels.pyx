# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Signatures match ``_pykernels.py``."""

from libc.stdlib cimport malloc, free
from libc.math cimport exp, log, cos, sin


cdef long* _square_counts(long p) except NULL:
    cdef long* counts = <long*> malloc(p * sizeof(long))
    cdef long y
    if counts == NULL:
        raise MemoryError()
    for y in range(p):
        counts[y] = 0
    for y in range(p):
        counts[(y * y) % p] += 1
    return counts


def count_points_fp(long a2, long a4, long a6, long p):
    """#E(F_p) for y^2 = x^3 + a2 x^2 + a4 x + a6, projective point included."""
    cdef long* counts = _square_counts(p)
    cdef long x, r
    cdef long total = 1
    a2 %= p; a4 %= p; a6 %= p
    try:
        with nogil:
            for x in range(p):
                r = (x + a2) % p
                r = (r * x + a4) % p
                r = (r * x + a6) % p
                total += counts[r]
    finally:
        free(counts)
    return total


def count_points_fp2(long a2_0, long a2_1, long a4_0, long a4_1, long a6_0, long a6_1,
                     long p, long d0, long d1):
    """#E(F_{p^2}) over F_p[t]/(t^2 - d1 t - d0); coefficients given as (c0, c1) pairs."""
    cdef long* counts = _square_counts(p)
    cdef long xa, xb, u, v, u2, v2, nrm
    cdef long total = 1
    try:
        with nogil:
            for xb in range(p):
                for xa in range(p):
                    u = (xa + a2_0) % p
                    v = (xb + a2_1) % p
                    u2 = (u * xa + (v * xb % p) * d0 + a4_0) % p
                    v2 = (u * xb + v * xa + (v * xb % p) * d1 + a4_1) % p
                    u = (u2 * xa + (v2 * xb % p) * d0 + a6_0) % p
                    v = (u2 * xb + v2 * xa + (v2 * xb % p) * d1 + a6_1) % p
                    if u == 0 and v == 0:
                        total += 1
                    else:
                        nrm = ((u * u) % p + ((u * v) % p) * d1 - ((v * v) % p) * d0) % p
                        if nrm < 0:
                            nrm += p
                        total += counts[nrm]
    finally:
        free(counts)
    return total


def dirichlet_partial_sum(values, double sre, double sim, long n_max):
    """Sum_{n <= n_max} values[n mod N] * n^(-s) with N = len(values)."""
    cdef long N = len(values)
    cdef double* vre = <double*> malloc(N * sizeof(double))
    cdef double* vim = <double*> malloc(N * sizeof(double))
    cdef long n, k
    cdef double mag, ang, accre = 0.0, accim = 0.0, ln
    if vre == NULL or vim == NULL:
        raise MemoryError()
    try:
        for k in range(N):
            z = complex(values[k])
            vre[k] = z.real
            vim[k] = z.imag
        for n in range(1, n_max + 1):
            k = n % N
            if vre[k] == 0.0 and vim[k] == 0.0:
                continue
            ln = log(<double> n)
            mag = exp(-sre * ln)
            ang = -sim * ln
            accre += mag * (vre[k] * cos(ang) - vim[k] * sin(ang))
            accim += mag * (vre[k] * sin(ang) + vim[k] * cos(ang))
    finally:
        free(vre)
        free(vim)
    return complex(accre, accim)
