"""Pure-Python/NumPy versions of the routines in ``_ckernels.pyx``.

Same signatures and branch rules; results agree with the compiled kernels to
a few ulp (summation order differs).
"""

import math

import numpy as np


def sinpi(x):
    n = round(x)
    s = math.sin(math.pi * (x - n))
    return -s if n % 2 else s


def cospi(x):
    n = round(x)
    c = math.cos(math.pi * (x - n))
    return -c if n % 2 else c


def _sinpi_arr(x):
    n = np.round(x)
    s = np.sin(np.pi * (x - n))
    return np.where(np.mod(n, 2) == 1, -s, s)


def _cospi_arr(x):
    n = np.round(x)
    c = np.cos(np.pi * (x - n))
    return np.where(np.mod(n, 2) == 1, -c, c)


def chi_naive(P, r):
    """Direct average of exp(2 pi i r j), j < P, for reduced r in [-1/2, 1/2]."""
    t = r * np.arange(P, dtype=np.float64)
    t -= np.floor(t)
    ang = 2.0 * np.pi * t
    return complex(math.fsum(np.cos(ang)), math.fsum(np.sin(ang))) / P


def chi_closed_batch(P, ys, int_tol, guard):
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    r = ys - np.round(ys)
    d = np.abs(r)
    out = np.ones(ys.shape, dtype=np.complex128)
    if P == 1:
        return out
    closed = d > guard
    rc = r[closed]
    amp = _sinpi_arr(P * rc) / (P * _sinpi_arr(rc))
    ph = (P - 1) * rc
    out[closed] = amp * (_cospi_arr(ph) + 1j * _sinpi_arr(ph))
    for i in np.flatnonzero((d > int_tol) & ~closed):
        out[i] = chi_naive(P, r[i])
    return out


def neumaier_sum(x):
    """Compensated left-to-right sum."""
    s = 0.0
    c = 0.0
    for v in np.asarray(x, dtype=np.float64).tolist():
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


def dft_direct(samples, kmax, block=256):
    samples = np.ascontiguousarray(samples, dtype=np.complex128)
    N = samples.shape[0]
    ang = 2.0 * np.pi * np.arange(N) / N
    table = np.cos(ang) - 1j * np.sin(ang)
    ks = np.arange(-kmax, kmax + 1)
    j = np.arange(N)
    out = np.empty(ks.shape[0], dtype=np.complex128)
    # row blocks keep the index matrix small
    for start in range(0, ks.shape[0], block):
        kb = ks[start:start + block]
        idx = np.mod(np.outer(kb, j), N)
        out[start:start + block] = table[idx] @ samples / N
    return out
