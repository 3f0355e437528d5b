# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. ``_pykernels`` mirrors every function here."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, floor, round, fabs, M_PI

cnp.import_array()


cdef inline bint _is_odd(double n) nogil:
    # n is integral; odd test without int overflow for |n| < 2**53
    return fabs(n - 2.0 * floor(n * 0.5)) == 1.0


cdef inline double _sinpi(double x) nogil:
    cdef double n = round(x)
    cdef double s = sin(M_PI * (x - n))
    if _is_odd(n):
        return -s
    return s


cdef inline double _cospi(double x) nogil:
    cdef double n = round(x)
    cdef double c = cos(M_PI * (x - n))
    if _is_odd(n):
        return -c
    return c


cdef inline void _chi_naive(long P, double r, double* re, double* im) nogil:
    cdef double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0
    cdef double t, v, s
    cdef long j
    for j in range(P):
        t = r * j
        t = t - floor(t)
        # Neumaier update, real part
        v = cos(2.0 * M_PI * t)
        s = sr + v
        if fabs(sr) >= fabs(v):
            cr += (sr - s) + v
        else:
            cr += (v - s) + sr
        sr = s
        # imaginary part
        v = sin(2.0 * M_PI * t)
        s = si + v
        if fabs(si) >= fabs(v):
            ci += (si - s) + v
        else:
            ci += (v - s) + si
        si = s
    re[0] = (sr + cr) / P
    im[0] = (si + ci) / P


def chi_naive(long P, double r):
    """Direct average of exp(2 pi i r j), j < P, for reduced r in [-1/2, 1/2]."""
    cdef double re, im
    with nogil:
        _chi_naive(P, r, &re, &im)
    return complex(re, im)


def chi_closed_batch(long P, const double[::1] ys, double int_tol, double guard):
    """Vectorised resonance evaluation with the same branch rules as the
    scalar path. Returns a complex128 array."""
    cdef Py_ssize_t n = ys.shape[0], i
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double y, r, d, num, den, amp, ph, re, im
    with nogil:
        for i in range(n):
            y = ys[i]
            r = y - round(y)
            d = fabs(r)
            if P == 1 or d <= int_tol:
                o[i] = 1.0
            elif d <= guard:
                _chi_naive(P, r, &re, &im)
                o[i].real = re
                o[i].imag = im
            else:
                num = _sinpi(P * r)
                den = _sinpi(r)
                amp = num / (P * den)
                ph = (P - 1) * r
                o[i].real = amp * _cospi(ph)
                o[i].imag = amp * _sinpi(ph)
    return out


def neumaier_sum(const double[::1] x):
    """Compensated left-to-right sum."""
    cdef double s = 0.0, c = 0.0, t, v
    cdef Py_ssize_t i, n = x.shape[0]
    with nogil:
        for i in range(n):
            v = x[i]
            t = s + v
            if fabs(s) >= fabs(v):
                c += (s - t) + v
            else:
                c += (v - t) + s
            s = t
    return s + c


def dft_direct(const double complex[::1] samples, long kmax):
    """c_k = (1/N) sum_j f_j exp(-2 pi i k j / N) for k = -kmax..kmax.

    Twiddles come from a table indexed by (k*j) mod N, so every phase is an
    exact N-th root of unity.
    """
    cdef long N = samples.shape[0]
    cdef long k, j, idx, kk
    cdef Py_ssize_t row
    tab_re = np.cos(2.0 * np.pi * np.arange(N) / N)
    tab_im = -np.sin(2.0 * np.pi * np.arange(N) / N)
    cdef double[::1] tr = tab_re
    cdef double[::1] ti = tab_im
    out = np.empty(2 * kmax + 1, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double accr, acci, fr, fi
    with nogil:
        for row in range(2 * kmax + 1):
            k = row - kmax
            kk = k % N
            if kk < 0:
                kk = kk + N
            accr = 0.0
            acci = 0.0
            idx = 0
            for j in range(N):
                fr = samples[j].real
                fi = samples[j].imag
                accr += fr * tr[idx] - fi * ti[idx]
                acci += fr * ti[idx] + fi * tr[idx]
                idx += kk
                if idx >= N:
                    idx -= N
            o[row].real = accr / N
            o[row].imag = acci / N
    return out
