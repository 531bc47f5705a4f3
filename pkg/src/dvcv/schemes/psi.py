"""Single-photon scheme fed with |beta_-> + A|1,odd> instead of a cat.

For n photons detected the photon branch keeps the cat-plus-SDSPS shape
with flipped parity, and the vacuum branch picks up a superposition of
displaced two-photon states as well:

    photon:  |beta_p> + C |1,p>
    vacuum:  |beta_q> + D |1,q> + F |2,q>

with p odd for even n and even for odd n, q the opposite parity, all at
amplitude beta t. The components are not orthogonal, so branch norms come
from their Gram matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .. import states
from ..errors import DegenerateState, InvalidConfig
from ..fock import FockVector, cutoff_for
from ..hybrid import VACUUM_PHOTON_LABELS, HybridState, from_unnormalized
from . import single_photon

READINGS = ("corrected", "printed")
PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class PsiSchemeConfig:
    a0: complex
    a1: complex
    beta: float
    t: float
    A: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "A", complex(self.A))
        # reuse the amplitude and range checks of the cat scheme
        single_photon.SchemeConfig(self.a0, self.a1, self.beta, self.t)
        for name in ("a0", "a1"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "t", float(self.t))

    @classmethod
    def balanced(cls, beta: float, t: float, A: complex = 0.0) -> "PsiSchemeConfig":
        s = 1 / math.sqrt(2)
        return cls(s, s, beta, t, A)

    @property
    def r(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.t * self.t))

    def as_cat_config(self) -> single_photon.SchemeConfig:
        """Cat-scheme config with the odd cat input (the A = 0 limit)."""
        return single_photon.SchemeConfig(self.a0, self.a1, self.beta, self.t, input_parity="odd")

    def require_analytic(self):
        if self.beta <= 0.0:
            raise DegenerateState("closed forms are singular at beta = 0; use the oracle engine")
        if not 0.0 < self.t < 1.0:
            raise DegenerateState(f"closed forms need 0 < t < 1, got t = {self.t}")


@dataclass(frozen=True)
class PsiBranches:
    """Unnormalized branch expansions over their component states."""

    n: int
    photon_kinds: tuple[str, str]
    vacuum_kinds: tuple[str, str, str]
    photon_weights: tuple[complex, complex]
    vacuum_weights: tuple[complex, complex, complex]
    R: complex
    R_prime: complex
    x: float
    envelope: float
    n_in: float


def _amps(n: int, y: float) -> tuple[float, float, float]:
    return tuple(states.displaced_amplitude(j, n, y).real if n >= 0 else 0.0 for j in range(3))


def _R_pair(config: PsiSchemeConfig, n: int, y: float) -> tuple[complex, complex]:
    t, r, A, b = config.t, config.r, config.A, config.beta
    c0, c1, c2 = _amps(n, y)
    no0, no1 = states.normalization("odd0", b), states.normalization("odd1", b)
    R = c0 * no0 - r * A * c1 * no1
    Rp = t * c1 * no0 - math.sqrt(2) * t * r * A * c2 * no1
    return R, Rp


def psi_branches(config: PsiSchemeConfig, n: int) -> PsiBranches:
    config.require_analytic()
    if n < 0:
        raise InvalidConfig(f"herald must be >= 0, got {n}")
    t, r, A, b = config.t, config.r, config.A, config.beta
    x, y = b * t, b * r
    c0, c1, _ = _amps(n, y)
    no0, no1 = states.normalization("odd0", b), states.normalization("odd1", b)
    R, Rp = _R_pair(config, n, y)
    if n % 2 == 0:
        pk, vk = ("odd0", "odd1"), ("ev0", "ev1", "ev2")
    else:
        pk, vk = ("ev0", "ev1"), ("odd0", "odd1", "odd2")
    nx = {k: states.normalization(k, x) for k in pk + vk}
    photon = (R / nx[pk[0]], A * t * c0 * no1 / nx[pk[1]])
    vacuum = (
        Rp / nx[vk[0]],
        (r * c0 * no0 + (t * t - r * r) * A * c1 * no1) / nx[vk[1]],
        math.sqrt(2) * t * r * A * c0 * no1 / nx[vk[2]],
    )
    return PsiBranches(
        n=n, photon_kinds=pk, vacuum_kinds=vk, photon_weights=photon, vacuum_weights=vacuum,
        R=R, R_prime=Rp, x=x, envelope=states.envelope(y),
        n_in=states.psi_normalization("2m", b, A),
    )


def _components(kinds, x):
    return [states.component_terms(k, x) for k in kinds]


def branch_norms(br: PsiBranches) -> tuple[float, float]:
    """Gram-matrix norms of the unnormalized photon and vacuum branches."""
    p = states.combination_norm(br.photon_weights, _components(br.photon_kinds, br.x))
    v = states.combination_norm(br.vacuum_weights, _components(br.vacuum_kinds, br.x))
    return p, v


def _phase(z: complex) -> complex:
    return z / abs(z) if z != 0 else 1.0 + 0j


def psi_coefficients(config: PsiSchemeConfig, n: int, reading: str = "corrected") -> dict:
    """R, R', C, D, F and B for one herald.

    ``reading="printed"`` evaluates the typeset forms: for even heralds the
    C, D and F normalizations take argument beta instead of beta t, and
    for odd heralds B takes R' from the amplitudes of index n - 1.
    C is None when R = 0 and D, F are None when R' = 0.
    """
    if reading not in READINGS:
        raise InvalidConfig(f"unknown reading {reading!r}")
    br = psi_branches(config, n)
    x, b = br.x, config.beta
    arg = b if (reading == "printed" and n % 2 == 0) else x
    pk, vk = br.photon_kinds, br.vacuum_kinds
    ratio = lambda k_num, k_den: states.normalization(k_num, arg) / states.normalization(k_den, arg)
    # weights relative to the leading component, normalizations at ``arg``
    pw = [w * states.normalization(k, x) for w, k in zip(br.photon_weights, pk)]
    vw = [w * states.normalization(k, x) for w, k in zip(br.vacuum_weights, vk)]
    C = pw[1] * ratio(pk[0], pk[1]) / br.R if br.R != 0 else None
    D = vw[1] * ratio(vk[0], vk[1]) / br.R_prime if br.R_prime != 0 else None
    F = vw[2] * ratio(vk[0], vk[2]) / br.R_prime if br.R_prime != 0 else None
    p_norm, v_norm = branch_norms(br)
    if p_norm == 0.0:
        raise DegenerateState("photon branch vanishes")
    B = (v_norm / p_norm) * _phase(br.R_prime) / _phase(br.R)
    if reading == "printed" and n % 2 == 1 and br.R_prime != 0:
        _, rp_prev = _R_pair(config, n - 1, config.beta * config.r)
        B = B * rp_prev / br.R_prime
    return {"R": br.R, "R_prime": br.R_prime, "C": C, "D": D, "F": F, "B": B}


def psi_success_probability(config: PsiSchemeConfig, n: int) -> float:
    br = psi_branches(config, n)
    p, v = branch_norms(br)
    w = abs(config.a0) ** 2 * p * p + abs(config.a1) ** 2 * v * v
    return (br.n_in * br.envelope) ** 2 * w


def _branch_vector(weights, kinds, x, cutoff, phase) -> FockVector:
    terms = ()
    for w, k in zip(weights, kinds):
        terms += states.scale_terms(w / phase, states.component_terms(k, x))
    return states.terms_to_vector(terms, cutoff, normalize=True)


def build_psi_conditional(
    config: PsiSchemeConfig, herald: int, cutoff: int | None = None, reading: str = "corrected"
) -> HybridState:
    """Heralded state a0 |Psi_p>|1> + a1 B |Psi_q>|0>, normalized.

    Branch CVs are taken with a real positive leading-component weight, so
    the complex phase of R'/R sits in B.
    """
    cutoff = cutoff_for(config.beta, 2) if cutoff is None else cutoff
    br = psi_branches(config, herald)
    co = psi_coefficients(config, herald, reading)
    x = br.x
    if reading == "corrected":
        pw, vw = br.photon_weights, br.vacuum_weights
    else:
        # rebuild the branches from the typeset ratios
        pw = (1.0 / states.normalization(br.photon_kinds[0], x),
              (co["C"] or 0.0) / states.normalization(br.photon_kinds[1], x))
        vw = (1.0 / states.normalization(br.vacuum_kinds[0], x),
              (co["D"] or 0.0) / states.normalization(br.vacuum_kinds[1], x),
              (co["F"] or 0.0) / states.normalization(br.vacuum_kinds[2], x))
    photon_cv = _branch_vector(pw, br.photon_kinds, x, cutoff, _phase(pw[0]) if pw[0] != 0 else _phase(pw[1]))
    vac_lead = next((w for w in vw if w != 0), 1.0)
    vacuum_cv = _branch_vector(vw, br.vacuum_kinds, x, cutoff, _phase(vac_lead))
    B = co["B"]
    nt = (abs(config.a0) ** 2 + abs(config.a1) ** 2 * abs(B) ** 2) ** -0.5
    return from_unnormalized(
        [
            ("vacuum", 0, config.a1 * B, vacuum_cv, None),
            ("photon", 1, config.a0, photon_cv, None),
        ],
        total_norm=nt,
        probability=psi_success_probability(config, herald),
        coefficients=co,
        dv_labels=VACUUM_PHOTON_LABELS,
        meta={"scheme": "psi", "herald": herald, "reading": reading},
    )


def psi_negativity(config: PsiSchemeConfig, herald: int, reading: str = "corrected") -> float:
    from ..entanglement import negativity_analytic

    return negativity_analytic(config.a0, config.a1, psi_coefficients(config, herald, reading)["B"])


def extract_coefficients(cv: FockVector, kinds, x: float) -> np.ndarray:
    """Expansion of ``cv`` over the named components, leading one scaled to 1.

    Least squares through a column-pivoted QR; a pivot below 1e-12 of the
    largest means the component set is numerically dependent.
    """
    cols = [states.terms_to_amplitudes(c, cv.layout.cutoffs[0]) for c in _components(kinds, x)]
    M = np.stack(cols, axis=1)
    Q, Rm, piv = scipy.linalg.qr(M, mode="economic", pivoting=True)
    d = np.abs(np.diag(Rm))
    if d[-1] < PIVOT_TOL * d[0]:
        raise DegenerateState("component set is numerically dependent at this amplitude")
    sol = np.empty(len(kinds), dtype=np.complex128)
    sol[piv] = scipy.linalg.solve_triangular(Rm, Q.conj().T @ cv.amplitudes)
    if sol[0] == 0:
        raise DegenerateState("leading component has zero weight")
    return sol / sol[0]


def relative_coefficients(config: PsiSchemeConfig, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Analytic (1, C) and (1, D, F) with the component normalizations folded in."""
    co = psi_coefficients(config, n)
    return (np.array([1, co["C"]], dtype=complex), np.array([1, co["D"], co["F"]], dtype=complex))


__all__ = [
    "PsiSchemeConfig",
    "PsiBranches",
    "psi_branches",
    "branch_norms",
    "psi_coefficients",
    "psi_success_probability",
    "build_psi_conditional",
    "psi_negativity",
    "extract_coefficients",
    "relative_coefficients",
    "READINGS",
]
