"""Pure numpy implementations of the Fock-space kernels.

Mirrors ``_ckernels.pyx`` one function at a time; used when the compiled
extension is unavailable or ``DVCV_KERNELS=python`` is set.
"""

import cmath
from functools import lru_cache
from math import log

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln


def displacement_matrix(alpha, dim):
    """Matrix elements <m|D(alpha)|n> for 0 <= m, n < dim.

    Uses <n+k|D|n> = sqrt(n!/(n+k)!) alpha^k e^{-|alpha|^2/2} L_n^(k)(|alpha|^2)
    with the Laguerre polynomials run forward in n, which stays accurate to
    machine precision where the usual column recurrence does not.
    """
    alpha = complex(alpha)
    x = abs(alpha) ** 2
    if x == 0.0:
        return np.eye(dim, dtype=np.complex128)
    out = np.zeros((dim, dim), dtype=np.complex128)
    half_log_x = 0.5 * log(x)
    phase = cmath.exp(1j * cmath.phase(alpha))
    n = np.arange(dim)
    for k in range(dim):
        size = dim - k
        lag = np.empty(size)
        lag[0] = 1.0
        if size > 1:
            lag[1] = 1.0 + k - x
        for i in range(2, size):
            lag[i] = ((2 * i - 1 + k - x) * lag[i - 1] - (i - 1 + k) * lag[i - 2]) / i
        nn = n[:size]
        logmag = k * half_log_x - 0.5 * x - 0.5 * (
            gammaln(nn + k + 1.0) - gammaln(nn + 1.0)
        )
        mag = np.exp(logmag) * lag
        out[nn + k, nn] = mag * phase**k
        if k:
            out[nn, nn + k] = mag * (-phase.conjugate()) ** k
    return out


@lru_cache(maxsize=64)
def _blocks(t, nmax):
    theta = np.arccos(min(max(t, -1.0), 1.0))
    U = np.zeros((nmax + 1, nmax + 1, nmax + 1), dtype=np.float64)
    for N in range(nmax + 1):
        k = np.arange(N)
        # generator a^+ b - a b^+ on |k, N-k>
        G = np.zeros((N + 1, N + 1))
        G[k + 1, k] = np.sqrt((k + 1.0) * (N - k))
        G[k, k + 1] = -G[k + 1, k]
        U[N, : N + 1, : N + 1] = expm(theta * G)
    U.setflags(write=False)
    return U


def beam_splitter_blocks(t, r, nmax):
    """Per-photon-number blocks of the two-mode beam-splitter unitary.

    Returns an array ``U`` of shape (nmax+1, nmax+1, nmax+1) where
    ``U[N, k, j] = <k, N-k| BS |j, N-j>`` for k, j <= N (zero elsewhere).
    ``r`` is implied by ``t`` and only kept for signature symmetry.
    """
    return _blocks(float(t), int(nmax))


def apply_beam_splitter(psi, t, r):
    """Apply the beam splitter to axes 0 and 1 of ``psi`` (shape dA, dB, rest)."""
    dA, dB, _ = psi.shape
    nmax = dA + dB - 2
    U = beam_splitter_blocks(t, r, nmax)
    out = np.zeros(psi.shape, dtype=np.complex128)
    for N in range(nmax + 1):
        kmin = max(0, N - (dB - 1))
        kmax = min(N, dA - 1)
        ks = np.arange(kmin, kmax + 1)
        block = U[N][np.ix_(ks, ks)]
        out[ks, N - ks, :] = block @ psi[ks, N - ks, :]
    return out
