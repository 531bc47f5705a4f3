"""Truncated multimode Fock-space engine.

States are dense complex tensors over per-mode photon-number cutoffs. This
module is the brute-force reference that every closed form in the package
is checked against, so it deliberately knows nothing about cat states or
displaced-number-state expansions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import CutoffTooSmall, InvalidModes, LayoutMismatch, OutOfRange

TAIL_TOL = 1e-10
QUBIT_CUTOFF = 3

_MAX_ENTRIES = 2**40


def cutoff_for(mu: complex, n: int = 0) -> int:
    """Default cutoff for a mode carrying |n, mu> (a displaced number state)."""
    a = abs(mu)
    return max(16, math.ceil(a * a + 6 * a + 10 + n * (2 + a)))


@dataclass(frozen=True)
class ModeLayout:
    cutoffs: tuple[int, ...]

    def __post_init__(self):
        cutoffs = tuple(int(c) for c in self.cutoffs)
        object.__setattr__(self, "cutoffs", cutoffs)
        for c in cutoffs:
            if c < 1:
                raise OutOfRange(f"cutoff must be >= 1, got {c}")
        if math.prod(c + 1 for c in cutoffs) > _MAX_ENTRIES:
            raise OutOfRange(f"Hilbert dimension of {cutoffs} is too large")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(c + 1 for c in self.cutoffs)

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    @property
    def n_modes(self) -> int:
        return len(self.cutoffs)

    def without(self, mode: int) -> "ModeLayout":
        return ModeLayout(self.cutoffs[:mode] + self.cutoffs[mode + 1 :])


def _layout(cutoffs) -> ModeLayout:
    return cutoffs if isinstance(cutoffs, ModeLayout) else ModeLayout(tuple(cutoffs))


@dataclass(frozen=True, eq=False)
class FockVector:
    """Dense amplitudes over ``layout``, flattened row-major."""

    layout: ModeLayout
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.layout.size:
            raise LayoutMismatch(
                f"{amps.size} amplitudes do not fit layout {self.layout.cutoffs}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.layout.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "FockVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return FockVector(self.layout, self.amplitudes / nrm)

    def scaled(self, c: complex) -> "FockVector":
        return FockVector(self.layout, self.amplitudes * c)

    def __add__(self, other: "FockVector") -> "FockVector":
        _same_layout(self, other)
        return FockVector(self.layout, self.amplitudes + other.amplitudes)

    def __sub__(self, other: "FockVector") -> "FockVector":
        _same_layout(self, other)
        return FockVector(self.layout, self.amplitudes - other.amplitudes)

    def tail_mass(self, modes: Sequence[int] | None = None) -> float:
        """Squared norm on basis states with n_i >= cutoff_i - 1 for any mode i."""
        probs = np.abs(self.tensor) ** 2
        mask = np.zeros(self.layout.dims, dtype=bool)
        modes = range(self.layout.n_modes) if modes is None else modes
        for i in modes:
            idx = [slice(None)] * self.layout.n_modes
            idx[i] = slice(self.layout.cutoffs[i] - 1, None)
            mask[tuple(idx)] = True
        return float(probs[mask].sum())

    def check_tail(self, tol: float = TAIL_TOL, modes=None) -> "FockVector":
        mass = self.tail_mass(modes)
        if mass > tol * max(1.0, self.norm() ** 2):
            raise CutoffTooSmall(
                f"tail mass {mass:.3e} exceeds tolerance {tol:.1e} for cutoffs "
                f"{self.layout.cutoffs}"
            )
        return self

    def resized(self, cutoffs) -> "FockVector":
        """Embed into (or truncate to) another layout with the same mode count."""
        layout = _layout(cutoffs)
        if layout.n_modes != self.layout.n_modes:
            raise LayoutMismatch("resizing cannot change the number of modes")
        out = np.zeros(layout.dims, dtype=np.complex128)
        common = tuple(slice(0, min(a, b)) for a, b in zip(layout.dims, self.layout.dims))
        out[common] = self.tensor[common]
        return FockVector(layout, out)

    def marginal(self, mode: int) -> np.ndarray:
        """Photon-number distribution of one mode."""
        probs = np.abs(self.tensor) ** 2
        axes = tuple(i for i in range(self.layout.n_modes) if i != mode)
        return probs.sum(axis=axes)


def _same_layout(a: FockVector, b: FockVector):
    if a.layout != b.layout:
        raise LayoutMismatch(f"layouts differ: {a.layout.cutoffs} vs {b.layout.cutoffs}")


def _check_mode(layout: ModeLayout, mode: int):
    if not 0 <= mode < layout.n_modes:
        raise InvalidModes(f"mode {mode} not in layout with {layout.n_modes} modes")


def from_amplitudes(cutoffs, amplitudes) -> FockVector:
    layout = _layout(cutoffs)
    return FockVector(layout, np.asarray(amplitudes, dtype=np.complex128))


def make_fock(cutoffs, occupation: Sequence[int]) -> FockVector:
    layout = _layout(cutoffs)
    occupation = tuple(int(n) for n in occupation)
    if len(occupation) != layout.n_modes:
        raise OutOfRange(f"occupation {occupation} has wrong length for {layout.cutoffs}")
    for n, c in zip(occupation, layout.cutoffs):
        if n < 0 or n > c:
            raise OutOfRange(f"occupation {occupation} exceeds cutoffs {layout.cutoffs}")
    amps = np.zeros(layout.dims, dtype=np.complex128)
    amps[occupation] = 1.0
    return FockVector(layout, amps)


def vacuum(cutoffs) -> FockVector:
    layout = _layout(cutoffs)
    return make_fock(layout, (0,) * layout.n_modes)


def tensor_product(*vectors: FockVector) -> FockVector:
    cutoffs: tuple[int, ...] = ()
    amps = np.ones((), dtype=np.complex128)
    for v in vectors:
        cutoffs += v.layout.cutoffs
        amps = np.multiply.outer(amps, v.tensor)
    return FockVector(ModeLayout(cutoffs), amps)


def superpose(terms) -> FockVector:
    """Sum of ``(coefficient, FockVector)`` pairs sharing one layout."""
    terms = list(terms)
    layout = terms[0][1].layout
    acc = np.zeros(layout.size, dtype=np.complex128)
    for c, v in terms:
        if v.layout != layout:
            raise LayoutMismatch("superposed vectors must share a layout")
        acc += c * v.amplitudes
    return FockVector(layout, acc)


def _apply_single_mode(state: FockVector, mode: int, matrix: np.ndarray) -> FockVector:
    t = np.tensordot(matrix, state.tensor, axes=([1], [mode]))
    t = np.moveaxis(t, 0, mode)
    return FockVector(state.layout, t)


def apply_displacement(
    state: FockVector, mode: int, alpha: complex, tail_tol: float = TAIL_TOL
) -> FockVector:
    """Apply D(alpha) to one mode; fails if truncation loses more than ``tail_tol``."""
    _check_mode(state.layout, mode)
    if alpha == 0:
        return state
    dim = state.layout.dims[mode]
    D = kernels.displacement_matrix(complex(alpha), dim)
    out = _apply_single_mode(state, mode, D)
    before = state.norm() ** 2
    lost = max(before - out.norm() ** 2, 0.0)
    if lost + out.tail_mass([mode]) > tail_tol * max(before, 1.0):
        raise CutoffTooSmall(
            f"displacement by {alpha} does not fit cutoff {state.layout.cutoffs[mode]} "
            f"(lost {lost:.2e}, tail {out.tail_mass([mode]):.2e})"
        )
    return out


def apply_beam_splitter(state: FockVector, mode_a: int, mode_b: int, t: float) -> FockVector:
    """Beam splitter with real transmittance ``t`` and reflectance sqrt(1 - t^2).

    Convention: BS|0,1> = r|1,0> + t|0,1> and BS|1,0> = t|1,0> - r|0,1>
    (first slot ``mode_a``), so that BS D_a(b) BS^+ = D_a(b t) D_b(-b r).
    """
    layout = state.layout
    _check_mode(layout, mode_a)
    _check_mode(layout, mode_b)
    if mode_a == mode_b:
        raise InvalidModes("beam splitter needs two distinct modes")
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise OutOfRange(f"transmittance {t} outside [0, 1]")
    r = math.sqrt(max(0.0, 1.0 - t * t))
    psi = np.moveaxis(state.tensor, (mode_a, mode_b), (0, 1))
    rest_shape = psi.shape[2:]
    psi = np.ascontiguousarray(psi).reshape(psi.shape[0], psi.shape[1], -1)
    out = kernels.apply_beam_splitter(psi, t, r)
    out = out.reshape(psi.shape[:2] + rest_shape)
    out = np.moveaxis(out, (0, 1), (mode_a, mode_b))
    return FockVector(layout, out)


def project_photon_number(state: FockVector, mode: int, n: int):
    """Herald ``n`` photons in ``mode``.

    Returns ``(probability, conditional)``; the conditional lives on the
    remaining modes and is normalized. For a zero-probability outcome the
    conditional is the (unnormalizable) zero vector.
    """
    layout = state.layout
    _check_mode(layout, mode)
    if not 0 <= n <= layout.cutoffs[mode]:
        raise OutOfRange(f"cannot herald {n} photons in mode with cutoff {layout.cutoffs[mode]}")
    sl = np.take(state.tensor, n, axis=mode)
    prob = float(np.sum(np.abs(sl) ** 2))
    reduced = layout.without(mode)
    if prob == 0.0:
        return 0.0, FockVector(reduced, np.zeros(reduced.size, dtype=np.complex128))
    return prob, FockVector(reduced, sl / math.sqrt(prob))


def inner_product(a: FockVector, b: FockVector) -> complex:
    """<a|b>, conjugating the first argument."""
    _same_layout(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def coherent(cutoff: int, alpha: complex, tail_tol: float = TAIL_TOL) -> FockVector:
    return apply_displacement(vacuum([cutoff]), 0, alpha, tail_tol)


def displaced_number(cutoff: int, n: int, alpha: complex, tail_tol: float = TAIL_TOL) -> FockVector:
    return apply_displacement(make_fock([cutoff], [n]), 0, alpha, tail_tol)
