"""Brute-force Fock simulations of every scheme.

Inputs are built only from engine operations (displacements of |0> and |1>
and numerically normalized sums), never from the closed forms, so the
outcomes here serve as independent ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .. import fock
from ..errors import DegenerateState, InvalidConfig
from ..fock import FockVector, ModeLayout, QUBIT_CUTOFF, cutoff_for

LEAK_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class OutcomeRecord:
    """Heralded outcome: indices, probability and the conditional state."""

    herald: tuple[int, ...]
    probability: float
    state: FockVector
    meta: Mapping[str, object] = field(default_factory=dict)


def _signed_pair(cutoff: int, n: int, x: float, sign: int) -> FockVector:
    plus = fock.displaced_number(cutoff, n, -x)
    minus = fock.displaced_number(cutoff, n, x)
    v = plus + minus.scaled(sign)
    if v.norm() < 1e-14:
        raise DegenerateState(f"|{n},-x> {'+' if sign > 0 else '-'} |{n},x> vanishes at x={x}")
    return v.normalize()


def input_state(kind: str, beta: float, cutoff: int | None = None, A: complex = 0.0,
                n_terms: int = 2) -> FockVector:
    """Single-mode scheme inputs assembled with the engine.

    kinds: scs_even, scs_odd, psi_2m (|beta_-> + A|1,odd>), psi_2m1
    (|beta_+> + A|1,even>), truncated_scs (first ``n_terms`` even terms).
    """
    beta = float(beta)
    if cutoff is None:
        cutoff = cutoff_for(beta, 1 if kind in ("psi_2m", "psi_2m1") else 0)
    if kind == "scs_even":
        return _signed_pair(cutoff, 0, beta, +1)
    if kind == "scs_odd":
        return _signed_pair(cutoff, 0, beta, -1)
    if kind in ("psi_2m", "psi_2m1"):
        base = _signed_pair(cutoff, 0, beta, -1 if kind == "psi_2m" else +1)
        if A == 0:
            return base
        extra = _signed_pair(cutoff, 1, beta, +1 if kind == "psi_2m" else -1)
        return (base + extra.scaled(A)).normalize()
    if kind == "truncated_scs":
        amps = np.zeros(cutoff + 1, dtype=np.complex128)
        for k in range(n_terms):
            amps[2 * k] = beta ** (2 * k) / math.sqrt(math.factorial(2 * k))
        return FockVector(ModeLayout((cutoff,)), amps).normalize()
    raise InvalidConfig(f"unknown oracle input {kind!r}")


def _photon_pair(a0: complex, a1: complex) -> FockVector:
    """a0|0>|1> + a1|1>|0> on two photon-qubit modes."""
    q = [QUBIT_CUTOFF, QUBIT_CUTOFF]
    return fock.make_fock(q, (0, 1)).scaled(a0) + fock.make_fock(q, (1, 0)).scaled(a1)


def single_photon_output(cv_in: FockVector, a0: complex, a1: complex, t: float) -> FockVector:
    """Full three-mode state after the beam splitter (before any herald)."""
    c = cv_in.layout.cutoffs[0]
    # photon number is conserved, so c + 1 holds modes 1 and 2 exactly
    cv = cv_in.resized([c + 1])
    state = fock.tensor_product(cv, _photon_pair(a0, a1).resized([c + 1, QUBIT_CUTOFF]))
    return fock.apply_beam_splitter(state, 0, 1, t)


def single_photon_outcome(cv_in: FockVector, a0: complex, a1: complex, t: float, n: int) -> OutcomeRecord:
    out = single_photon_output(cv_in, a0, a1, t)
    if n > out.layout.cutoffs[1]:
        reduced = out.layout.without(1)
        return OutcomeRecord((n,), 0.0, FockVector(reduced, np.zeros(reduced.size)))
    p, cond = fock.project_photon_number(out, 1, n)
    return OutcomeRecord((n,), p, cond, {"modes": ("cv", "dv")})


def herald_distribution(state: FockVector, modes) -> np.ndarray:
    """Joint photon-number distribution of the given modes."""
    modes = tuple(modes)
    probs = np.abs(state.tensor) ** 2
    rest = tuple(i for i in range(state.layout.n_modes) if i not in modes)
    dist = probs.sum(axis=rest)
    # sum() keeps the remaining axes in increasing order
    order = np.argsort(np.argsort(modes))
    return np.transpose(dist, order) if dist.ndim > 1 else dist


def two_photon_output(cv_in: FockVector, a0: complex, a1: complex, t: float, beta1: float,
                 t1: float, aux_cutoff: int | None = None) -> FockVector:
    """Six-mode state: modes (1, 2, 3, 4, 5, 6) after BS_13 and BS_24."""
    c = cv_in.layout.cutoffs[0]
    c2 = cutoff_for(beta1) if aux_cutoff is None else aux_cutoff
    aux = fock.coherent(c2, -beta1).resized([c2 + 1])
    q = QUBIT_CUTOFF
    photons = (
        fock.make_fock([c + 1, c2 + 1, q, q], (0, 1, 0, 1)).scaled(a0)
        + fock.make_fock([c + 1, c2 + 1, q, q], (1, 0, 1, 0)).scaled(a1)
    )
    state = fock.tensor_product(cv_in.resized([c + 1]), aux, photons)
    state = fock.apply_beam_splitter(state, 0, 2, t)
    return fock.apply_beam_splitter(state, 1, 3, t1)


def two_photon_outcome(out: FockVector, n: int, k: int) -> OutcomeRecord:
    p1, cond = fock.project_photon_number(out, 2, n)
    if p1 == 0.0:
        return OutcomeRecord((n, k), 0.0, cond)
    p2, cond = fock.project_photon_number(cond, 2, k)
    return OutcomeRecord((n, k), p1 * p2, cond, {"modes": ("cv", "aux", "dv5", "dv6")})


def restrict_dv(state: FockVector, dv_modes, patterns) -> tuple[FockVector, float]:
    """Keep only the listed occupation patterns of the trailing dv modes.

    Returns the state with those modes replaced by one axis of length
    len(patterns) (laid out with cutoff len-1) and the discarded mass.
    """
    dv_modes = tuple(dv_modes)
    n = state.layout.n_modes
    keep = [i for i in range(n) if i not in dv_modes]
    t = np.moveaxis(state.tensor, dv_modes, range(n - len(dv_modes), n))
    slices = [t[(...,) + tuple(p)] for p in patterns]
    new = np.stack(slices, axis=-1)
    leaked = max(state.norm() ** 2 - float(np.sum(np.abs(new) ** 2)), 0.0)
    cutoffs = tuple(state.layout.cutoffs[i] for i in keep) + (len(patterns) - 1,)
    return FockVector(ModeLayout(cutoffs), new), leaked


def single_photon_joint(record: OutcomeRecord) -> FockVector:
    """Oracle conditional state over (cv, qubit) with qubit = mode-3 occupation."""
    v, leaked = restrict_dv(record.state, (1,), [(0,), (1,)])
    if leaked > LEAK_TOL:
        raise DegenerateState(f"dv mode left the qubit subspace (mass {leaked:.2e})")
    return v


def two_photon_joint(record: OutcomeRecord) -> FockVector:
    """Oracle conditional over (cv, aux, rail) with rail 0 = |01>, 1 = |10>."""
    v, leaked = restrict_dv(record.state, (2, 3), [(0, 1), (1, 0)])
    if leaked > LEAK_TOL:
        raise DegenerateState(f"dv modes left the two-rail subspace (mass {leaked:.2e})")
    return v


def exotic_dv_outcome(cv_in: FockVector, a0: complex, a1: complex, t: float, n: int):
    """Two-photon scheme without the second beam splitter: the CV mode entangles with
    the three-mode DV pair |1,01> / |0,10> on modes (4, 5, 6).

    Returns (probability, state over (cv, qubit)) with qubit 0 = |0,10>,
    qubit 1 = |1,01>.
    """
    c = cv_in.layout.cutoffs[0]
    q = QUBIT_CUTOFF
    photons = (
        fock.make_fock([c + 1, q, q, q], (0, 1, 0, 1)).scaled(a0)
        + fock.make_fock([c + 1, q, q, q], (1, 0, 1, 0)).scaled(a1)
    )
    state = fock.tensor_product(cv_in.resized([c + 1]), photons)
    state = fock.apply_beam_splitter(state, 0, 1, t)
    p, cond = fock.project_photon_number(state, 1, n)
    if p == 0.0:
        return 0.0, cond
    v, leaked = restrict_dv(cond, (1, 2, 3), [(0, 1, 0), (1, 0, 1)])
    if leaked > LEAK_TOL:
        raise DegenerateState(f"dv modes left the expected subspace (mass {leaked:.2e})")
    return p, v


def match_cutoffs(a: FockVector, b: FockVector) -> tuple[FockVector, FockVector]:
    """Pad both vectors to the larger cutoff in each mode."""
    cut = tuple(max(x, y) for x, y in zip(a.layout.cutoffs, b.layout.cutoffs))
    return a.resized(cut), b.resized(cut)


def state_fidelity(a: FockVector, b: FockVector) -> float:
    a, b = match_cutoffs(a, b)
    return abs(fock.inner_product(a, b)) ** 2 / (a.norm() ** 2 * b.norm() ** 2)
