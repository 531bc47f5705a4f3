"""Negativity and fidelity for the hybrid states.

Negativity is ||rho^{T_A}||_1 - 1 with no factor 1/2, so a maximally
entangled pair of qubits scores 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDensity, LayoutMismatch
from .fock import FockVector
from .hybrid import HybridState

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10


def negativity_analytic(a0: complex, a1: complex, B: complex) -> float:
    """2|a0||a1||B| / (|a0|^2 + |a1|^2 |B|^2) for orthogonal two-branch states."""
    a0, a1, B = abs(a0), abs(a1), abs(B)
    den = a0 * a0 + a1 * a1 * B * B
    if den == 0.0:
        return 0.0
    return 2 * a0 * a1 * B / den


def negativity_from_weights(w0: complex, w1: complex) -> float:
    """Same closed form written with the two branch weights directly."""
    p0, p1 = abs(w0) ** 2, abs(w1) ** 2
    if p0 + p1 == 0.0:
        return 0.0
    return 2 * abs(w0) * abs(w1) / (p0 + p1)


@dataclass(frozen=True, eq=False)
class BipartiteDensity:
    dims: tuple[int, int]
    matrix: np.ndarray

    def __post_init__(self):
        dA, dB = (int(d) for d in self.dims)
        object.__setattr__(self, "dims", (dA, dB))
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (dA * dB, dA * dB):
            raise InvalidDensity(f"matrix shape {m.shape} does not match dims {self.dims}")
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL * scale:
            raise InvalidDensity("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidDensity(f"trace {tr!r} differs from 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_pure(cls, psi: np.ndarray) -> "BipartiteDensity":
        """``psi`` shaped (d_A, d_B); normalized here."""
        psi = np.asarray(psi, dtype=np.complex128)
        psi = psi / np.linalg.norm(psi)
        v = psi.reshape(-1)
        return cls(psi.shape, np.outer(v, v.conj()))

    def partial_transpose(self) -> np.ndarray:
        """Transpose on subsystem A."""
        dA, dB = self.dims
        r = self.matrix.reshape(dA, dB, dA, dB)
        return r.transpose(2, 1, 0, 3).reshape(dA * dB, dA * dB)


def negativity_numeric(rho: BipartiteDensity) -> float:
    """Sum of |eigenvalues| of the partial transpose, minus one."""
    pt = rho.partial_transpose()
    pt = 0.5 * (pt + pt.conj().T)
    lam = np.linalg.eigvalsh(pt)
    val = float(np.sum(np.abs(lam)) - 1.0)
    if val < PSD_FLOOR:
        raise InvalidDensity(f"negativity {val:.3e} below zero beyond tolerance")
    return max(val, 0.0)


def hybrid_density(state: HybridState) -> BipartiteDensity:
    """CV side (mode 1 together with any aux mode) versus the DV qubit."""
    return BipartiteDensity.from_pure(state.density_blocks())


def joint_density(vec: FockVector) -> BipartiteDensity:
    """Same bipartition for an oracle vector whose last mode is the qubit."""
    t = vec.tensor
    return BipartiteDensity.from_pure(t.reshape(-1, t.shape[-1]))


def _as_vector(x) -> FockVector:
    return x.joint_vector() if isinstance(x, HybridState) else x


def fidelity(a: FockVector | HybridState, b: FockVector | HybridState) -> float:
    """|<a|b>|^2 for normalized pure states; cutoffs are padded to match."""
    va, vb = _as_vector(a), _as_vector(b)
    if va.layout.n_modes != vb.layout.n_modes:
        raise LayoutMismatch("states have different mode counts")
    cut = tuple(max(x, y) for x, y in zip(va.layout.cutoffs, vb.layout.cutoffs))
    va, vb = va.resized(cut), vb.resized(cut)
    ov = np.vdot(va.amplitudes, vb.amplitudes)
    f = abs(ov) ** 2 / (va.norm() ** 2 * vb.norm() ** 2)
    return float(min(max(f, 0.0), 1.0))
