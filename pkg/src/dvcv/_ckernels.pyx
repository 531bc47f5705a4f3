# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Fock-space kernels: displacement matrix elements and blockwise
beam-splitter application. Same signatures as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, lgamma, log, atan2, cos, sin

from ._pykernels import beam_splitter_blocks as _py_blocks

cnp.import_array()


def displacement_matrix(alpha, Py_ssize_t dim):
    cdef double complex a = complex(alpha)
    cdef double x = a.real * a.real + a.imag * a.imag
    if x == 0.0:
        return np.eye(dim, dtype=np.complex128)
    out = np.zeros((dim, dim), dtype=np.complex128)
    cdef double complex[:, ::1] D = out
    cdef double[::1] lag = np.empty(dim)
    cdef double half_log_x = 0.5 * log(x)
    cdef double phi = atan2(a.imag, a.real)
    cdef double complex lower, upper
    cdef double mag
    cdef Py_ssize_t k, i, size
    for k in range(dim):
        size = dim - k
        lag[0] = 1.0
        if size > 1:
            lag[1] = 1.0 + k - x
        for i in range(2, size):
            lag[i] = ((2 * i - 1 + k - x) * lag[i - 1] - (i - 1 + k) * lag[i - 2]) / i
        # e^{ik phi} and (-e^{-i phi})^k
        lower = cos(k * phi) + 1j * sin(k * phi)
        upper = lower.conjugate()
        if k % 2:
            upper = -upper
        for i in range(size):
            mag = exp(k * half_log_x - 0.5 * x
                      - 0.5 * (lgamma(i + k + 1.0) - lgamma(i + 1.0))) * lag[i]
            D[i + k, i] = mag * lower
            if k:
                D[i, i + k] = mag * upper
    return out


def beam_splitter_blocks(double t, double r, Py_ssize_t nmax):
    # per-block matrix exponentials are shared with the numpy backend
    return _py_blocks(t, r, nmax)


def apply_beam_splitter(psi, double t, double r):
    cdef const double complex[:, :, :] src = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef Py_ssize_t dA = src.shape[0], dB = src.shape[1], R = src.shape[2]
    cdef Py_ssize_t nmax = dA + dB - 2
    cdef const double[:, :, :] U = beam_splitter_blocks(t, r, nmax)
    res = np.zeros((dA, dB, R), dtype=np.complex128)
    cdef double complex[:, :, ::1] out = res
    cdef Py_ssize_t N, k, j, q, kmin, kmax
    cdef double u
    for N in range(nmax + 1):
        kmin = N - (dB - 1)
        if kmin < 0:
            kmin = 0
        kmax = N if N < dA - 1 else dA - 1
        for k in range(kmin, kmax + 1):
            for j in range(kmin, kmax + 1):
                u = U[N, k, j]
                if u == 0.0:
                    continue
                for q in range(R):
                    out[k, N - k, q] = out[k, N - k, q] + u * src[j, N - j, q]
    return res
