"""Cat state and an auxiliary coherent state against two delocalized photons.

Input: cat on mode 1, |-beta1> on mode 2, and a0|0101> + a1|1010> on modes
3-6. BS_13 (t) and BS_24 (t1) act, then modes 3 and 4 are measured with
outcomes (n, k). The CV mode 1 behaves exactly as in the single-photon
scheme. Mode 2 ends in

    Psi_k  = N_k (r1 c0k(y1)|1,-x1> + t1 c1k(y1)|-x1>)   on the a0 branch,
    |-x1>                                                 on the a1 branch,

with x1 = beta1 t1 and y1 = beta1 r1. The a1 branch also picks up c0k(y1).
Rails (5, 6) carry |01> for a0 and |10> for a1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .. import states
from ..errors import DegenerateState, InvalidConfig
from ..fock import FockVector, cutoff_for
from ..hybrid import TWO_RAIL_LABELS, HybridState, from_unnormalized
from . import single_photon


@dataclass(frozen=True)
class SchemeBConfig:
    a0: complex
    a1: complex
    beta: float
    t: float
    beta1: float
    t1: float

    def __post_init__(self):
        for name in ("a0", "a1"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        for name in ("beta", "t", "beta1", "t1"):
            object.__setattr__(self, name, float(getattr(self, name)))
        self.first_stage  # validates a0, a1, beta, t
        if self.beta1 < 0:
            raise InvalidConfig(f"beta1 must be >= 0, got {self.beta1}")
        if not 0.0 <= self.t1 <= 1.0:
            raise InvalidConfig(f"t1 must lie in [0, 1], got {self.t1}")

    @classmethod
    def balanced(cls, beta, t, beta1, t1) -> "SchemeBConfig":
        s = 1 / math.sqrt(2)
        return cls(s, s, beta, t, beta1, t1)

    @property
    def first_stage(self) -> single_photon.SchemeConfig:
        return single_photon.SchemeConfig(self.a0, self.a1, self.beta, self.t)

    @property
    def r1(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.t1 * self.t1))

    @property
    def x1(self) -> float:
        return self.beta1 * self.t1

    @property
    def y1(self) -> float:
        return self.beta1 * self.r1

    def require_analytic(self):
        self.first_stage.require_analytic()
        if self.beta1 <= 0.0:
            raise DegenerateState("closed forms need beta1 > 0")
        if not 0.0 < self.t1 < 1.0:
            raise DegenerateState(f"closed forms need 0 < t1 < 1, got t1 = {self.t1}")


def _aux_amplitudes(config: SchemeBConfig, k: int) -> tuple[float, float, float]:
    """(c0k(y1), c1k(y1), N_k)."""
    if k < 0:
        raise InvalidConfig(f"herald k must be >= 0, got {k}")
    y1 = config.y1
    c0k = states.displaced_amplitude(0, k, y1).real
    c1k = states.displaced_amplitude(1, k, y1).real
    s = (config.r1 * c0k) ** 2 + (config.t1 * c1k) ** 2
    if s == 0.0:
        raise DegenerateState(f"Psi_k vanishes at k={k}")
    return c0k, c1k, s**-0.5


def psi_k_terms(config: SchemeBConfig, k: int) -> tuple[states.Term, ...]:
    if config.r1 == 0.0:
        raise DegenerateState("Psi_k degenerates at r1 = 0")
    c0k, c1k, nk = _aux_amplitudes(config, k)
    x1 = config.x1
    return ((nk * config.r1 * c0k, 1, -x1), (nk * config.t1 * c1k, 0, -x1))


def psi_k_state(config: SchemeBConfig, k: int, cutoff: int | None = None) -> FockVector:
    """Normalized mode-2 state on the a0 branch."""
    cutoff = cutoff_for(config.beta1, 1) if cutoff is None else cutoff
    return states.terms_to_vector(psi_k_terms(config, k), cutoff)


def psi_k_coherent_overlap(config: SchemeBConfig, k: int) -> float:
    """<-x1|Psi_k> = N_k t1 c1k(y1); the displaced photon term is orthogonal."""
    c0k, c1k, nk = _aux_amplitudes(config, k)
    return nk * config.t1 * c1k


def coefficient_B(config: SchemeBConfig, n: int, k: int) -> float:
    config.require_analytic()
    c0k, _, nk = _aux_amplitudes(config, k)
    return single_photon.coefficient_B(config.first_stage, n) * c0k * nk


def coefficient_A(config: SchemeBConfig, n: int, k: int) -> float:
    """Same as the single-photon scheme; the aux mode does not enter."""
    config.require_analytic()
    return single_photon.coefficient_A(config.first_stage, n)


def success_probability_b(config: SchemeBConfig, n: int, k: int) -> float:
    config.require_analytic()
    s = single_photon.herald_split(config.first_stage, n)
    c0k, _, nk = _aux_amplitudes(config, k)
    branch = (
        abs(config.a0) ** 2 * s.photon_amp**2 / nk**2
        + abs(config.a1) ** 2 * s.vac_norm**2 * c0k**2
    )
    return (s.n_in * s.envelope * states.envelope(config.y1)) ** 2 * branch


def printed_probability_b(config: SchemeBConfig, n: int, k: int, reading: str = "indexed") -> float:
    """Probability from the printed product form.

    ``reading="indexed"`` uses N^(t)_nk for both parities; ``"printed"`` uses
    the single-photon N^(t)_n for odd n, as the odd formula is typeset.
    """
    config.require_analytic()
    s = single_photon.herald_split(config.first_stage, n)
    _, _, nk = _aux_amplitudes(config, k)
    if reading == "printed" and n % 2 == 1:
        B = single_photon.coefficient_B(config.first_stage, n)
    elif reading in ("printed", "indexed"):
        B = coefficient_B(config, n, k)
    else:
        raise ValueError(f"unknown reading {reading!r}")
    nt = single_photon.total_norm(config.first_stage, B)
    ratio = states.normalization("ev0", config.beta) / states.normalization(s.photon_kind, s.x)
    env = s.envelope * states.envelope(config.y1)
    return env**2 * s.c0**2 * (nt * nk) ** -2 * ratio**2


def _cv_branches(config: SchemeBConfig, n: int, cutoff: int):
    h = single_photon.build_conditional_state(config.first_stage, n, cutoff)
    return h.branch("photon").cv, h.branch("vacuum").cv, h


def build_exact_conditional(
    config: SchemeBConfig, n: int, k: int, cutoff: int | None = None, aux_cutoff: int | None = None
) -> HybridState:
    config.require_analytic()
    cutoff = cutoff_for(config.beta, 1) if cutoff is None else cutoff
    aux_cutoff = cutoff_for(config.beta1, 1) if aux_cutoff is None else aux_cutoff
    s = single_photon.herald_split(config.first_stage, n)
    c0k, _, nk = _aux_amplitudes(config, k)
    cat_cv, mixed_cv, h = _cv_branches(config, n, cutoff)
    psi_k = psi_k_state(config, k, aux_cutoff)
    coh = states.terms_to_vector(((1.0, 0, -config.x1),), aux_cutoff)
    B = coefficient_B(config, n, k)
    sgn = -1.0 if s.c1 < 0 else 1.0
    return from_unnormalized(
        [
            ("01", 0, config.a0 * s.photon_amp / nk, cat_cv, psi_k),
            ("10", 1, config.a1 * sgn * s.vac_norm * c0k, mixed_cv, coh),
        ],
        total_norm=single_photon.total_norm(config.first_stage, B),
        probability=success_probability_b(config, n, k),
        coefficients={"B": B, "A": h.coefficients.get("A"), "N_k": nk, "c0k": c0k},
        dv_labels=TWO_RAIL_LABELS,
        meta={"scheme": "fig1b", "herald": (n, k), "form": "exact"},
    )


def build_approximate_conditional(
    config: SchemeBConfig, n: int, k: int, cutoff: int | None = None, aux_cutoff: int | None = None
) -> HybridState:
    """Exact state with Psi_k replaced by the coherent state |-beta1 t1>.

    The aux mode is then a common factor, so the CV-rail part has the
    two-branch form with weights a0 and a1 B_nk. The overlap with the exact
    state is stored in ``meta["approximation_fidelity"]``.
    """
    config.require_analytic()
    cutoff = cutoff_for(config.beta, 1) if cutoff is None else cutoff
    aux_cutoff = cutoff_for(config.beta1, 1) if aux_cutoff is None else aux_cutoff
    cat_cv, mixed_cv, h = _cv_branches(config, n, cutoff)
    coh = states.terms_to_vector(((1.0, 0, -config.x1),), aux_cutoff)
    B = coefficient_B(config, n, k)
    return from_unnormalized(
        [
            ("01", 0, config.a0, cat_cv, coh),
            ("10", 1, config.a1 * B, mixed_cv, coh),
        ],
        total_norm=single_photon.total_norm(config.first_stage, B),
        probability=success_probability_b(config, n, k),
        coefficients={"B": B, "A": h.coefficients.get("A")},
        dv_labels=TWO_RAIL_LABELS,
        meta={
            "scheme": "fig1b",
            "herald": (n, k),
            "form": "approximate",
            "approximation_fidelity": approximation_fidelity(config, n, k),
        },
    )


def approximation_fidelity(config: SchemeBConfig, n: int, k: int) -> float:
    """|<exact|approximate>|^2 = N^4 (|a0|^2 <-x1|Psi_k> + |a1 B|^2)^2."""
    B = coefficient_B(config, n, k)
    nt = single_photon.total_norm(config.first_stage, B)
    ov = abs(config.a0) ** 2 * psi_k_coherent_overlap(config, k) + abs(config.a1 * B) ** 2
    return (nt**2 * ov) ** 2


def negativity_b(config: SchemeBConfig, n: int, k: int) -> float:
    from ..entanglement import negativity_analytic

    return negativity_analytic(config.a0, config.a1, coefficient_B(config, n, k))
