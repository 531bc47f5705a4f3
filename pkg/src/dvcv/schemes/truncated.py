"""Truncated even cats (two or three Fock terms) on the single-photon scheme.

With only |0>, |2> (and |4>) at the input the heralded states are finite
superpositions, written out term by term below. Their fidelities with the
states produced by the genuine cat are given both by closed formulas and
by direct inner products; the direct value is the reference.
"""

from __future__ import annotations

import math

import numpy as np

from .. import states
from ..errors import DegenerateState, InvalidConfig
from ..fock import FockVector, ModeLayout, cutoff_for
from ..hybrid import VACUUM_PHOTON_LABELS, HybridState, from_unnormalized
from . import single_photon

FORMULA_MIN_BETA = 1e-3


def _check(term_count: int, herald: int):
    if term_count not in (2, 3):
        raise InvalidConfig(f"term_count must be 2 or 3, got {term_count}")
    if herald not in (0, 1):
        raise InvalidConfig(f"herald must be 0 or 1, got {herald}")


def branch_amplitudes(config: single_photon.SchemeConfig, term_count: int, herald: int):
    """Unnormalized Fock amplitudes (photon branch, vacuum branch)."""
    _check(term_count, herald)
    b, t, r = config.beta, config.t, config.r
    x2 = (b * t) ** 2
    if herald == 0:
        photon = [1.0, 0.0, x2 / math.sqrt(2)]
        vacuum = [0.0, r, 0.0, r * math.sqrt(1.5) * x2]
        if term_count == 3:
            photon += [0.0, x2 * x2 / math.sqrt(24)]
            vacuum += [0.0, r * math.sqrt(5 / 24) * x2 * x2]
    else:
        photon = [0.0, -t * r * b * b]
        vacuum = [t, 0.0, t * (t * t - 2 * r * r) * b * b / math.sqrt(2)]
        if term_count == 3:
            photon += [0.0, -t * r * b * b * x2 / math.sqrt(6)]
            vacuum += [0.0, t * (t * t - 4 * r * r) * b**4 * t * t / math.sqrt(24)]
    return np.array(photon, dtype=np.complex128), np.array(vacuum, dtype=np.complex128)


def entangling_B(config: single_photon.SchemeConfig, term_count: int, herald: int,
                 reading: str = "corrected") -> float:
    """Closed-form |B| for the truncated states.

    The three-term herald-1 formula is typeset with beta^8 t^2 in the last
    numerator term; the state itself gives beta^8 t^4. ``reading="printed"``
    evaluates the typeset version.
    """
    _check(term_count, herald)
    b, t, r = config.beta, config.t, config.r
    b4t4 = (b * t) ** 4
    if herald == 0:
        if term_count == 2:
            return r * math.sqrt((1 + 1.5 * b4t4) / (1 + b4t4 / 2))
        return r * math.sqrt((1 + 1.5 * b4t4 + 5 * b4t4**2 / 24) / (1 + b4t4 / 2 + b4t4**2 / 24))
    if b == 0.0:
        raise DegenerateState("herald 1 leaves no photon branch at beta = 0")
    d2 = (t * t - 2 * r * r) ** 2
    if term_count == 2:
        return b**-2 * math.sqrt((1 + b**4 * d2 / 2) / (1 - t * t))
    d4 = (t * t - 4 * r * r) ** 2
    tpow = t**2 if reading == "printed" else t**4
    num = 1 + b**4 * d2 / 2 + b**8 * tpow * d4 / 24
    return b**-2 * math.sqrt(num / ((1 - t * t) * (1 + b4t4 / 6)))


def build_truncated_conditional(
    config: single_photon.SchemeConfig, term_count: int, herald: int, cutoff: int | None = None
) -> HybridState:
    _check(term_count, herald)
    if herald == 1 and config.beta == 0.0:
        raise DegenerateState("herald 1 leaves no photon branch at beta = 0")
    photon, vacuum = branch_amplitudes(config, term_count, herald)
    cutoff = 2 * term_count - 1 if cutoff is None else cutoff
    lay = ModeLayout((cutoff,))
    vecs = []
    for amps in (photon, vacuum):
        full = np.zeros(cutoff + 1, dtype=np.complex128)
        full[: amps.size] = amps
        vecs.append(FockVector(lay, full))
    n_p, n_v = vecs[0].norm(), vecs[1].norm()
    if n_p == 0.0 or n_v == 0.0:
        raise DegenerateState("a branch of the truncated state vanishes")
    w_p, w_v = config.a0 * n_p, config.a1 * n_v
    total = math.sqrt(abs(w_p) ** 2 + abs(w_v) ** 2)
    n_in = states.truncated_scs_amplitudes(config.beta, term_count)
    prob = total**2 / float(np.sum(np.abs(n_in) ** 2))
    B = n_v / n_p
    return from_unnormalized(
        [
            ("vacuum", 0, w_v, vecs[1].normalize(), None),
            ("photon", 1, w_p, vecs[0].normalize(), None),
        ],
        total_norm=1 / total,
        probability=prob,
        coefficients={"B": B, "B_closed_form": entangling_B(config, term_count, herald)},
        dv_labels=VACUUM_PHOTON_LABELS,
        meta={"scheme": "truncated", "term_count": term_count, "herald": herald},
    )


# fidelity formulas ---------------------------------------------------------


def _genuine_norm(config: single_photon.SchemeConfig, herald: int) -> float:
    """N_0^(t) or N_1^(t) of the fidelity formulas."""
    b, t, r = config.beta, config.t, config.r
    x = b * t
    e = math.exp(-2 * x * x)
    if herald == 0:
        c10 = states.displaced_amplitude(1, 0, b * r).real
        n0m2 = (
            r * r * states.normalization("odd1", x) ** -2
            + t * t * c10 * c10 * states.normalization("odd0", x) ** -2
            - 8 * r * t * t * b * c10 * e
        )
        return (abs(config.a0) ** 2 * states.normalization("ev0", x) ** -2
                + abs(config.a1) ** 2 * n0m2) ** -0.5
    c01 = states.displaced_amplitude(0, 1, b * r).real
    c11 = states.displaced_amplitude(1, 1, b * r).real
    n1m2 = (
        r * r * c01 * c01 * states.normalization("ev1", x) ** -2
        + t * t * c11 * c11 * states.normalization("ev0", x) ** -2
        + 8 * r * t * t * b * c01 * c11 * e
    )
    return (abs(config.a0) ** 2 * c01 * c01 * states.normalization("odd0", x) ** -2
            + abs(config.a1) ** 2 * n1m2) ** -0.5


def fidelity_formula(config: single_photon.SchemeConfig, term_count: int, herald: int,
                     reading: str = "printed") -> float:
    """Closed-form fidelity between the truncated and the genuine-cat state.

    ``reading="printed"`` follows the typeset expressions; for the three-term
    herald-0 case that includes an extra division by the a1 sum.
    ``reading="corrected"`` drops it.
    """
    _check(term_count, herald)
    b, t, r = config.beta, config.t, config.r
    x4 = (b * t) ** 4
    p0, p1 = abs(config.a0) ** 2, abs(config.a1) ** 2
    pref = 4 * states.envelope(b * t) ** 2 * _genuine_norm(config, herald) ** 2
    if herald == 0:
        if term_count == 2:
            return pref * (p0 * (1 + x4 / 2) + p1 * r * r * (1 + 1.5 * x4))
        a1_sum = p1 * r * r * (1 + 1.5 * x4 + 5 * x4 * x4 / 24)
        s = p0 * (1 + x4 / 2 + x4 * x4 / 24) + a1_sum
        return pref * (s / a1_sum if reading == "printed" else s)
    d2 = (t * t - 2 * r * r) ** 2
    if term_count == 2:
        return pref * (p0 * t * t * r * r * b**4 + p1 * t * t * (1 + b**4 * d2 / 2))
    d4 = (t * t - 4 * r * r) ** 2
    return pref * (
        p0 * t * t * r * r * b**4 * (1 + x4 / 6)
        + p1 * t * t * (1 + b**4 * d2 / 2 + b**8 * t**4 * d4 / 24)
    )


def fidelity_to_genuine(config: single_photon.SchemeConfig, term_count: int, herald: int):
    """(formula_value, direct_value); formula_value is None below beta = 1e-3."""
    trunc = build_truncated_conditional(config, term_count, herald)
    genuine = single_photon.build_conditional_state(config, herald, cutoff_for(config.beta, 1))
    from ..entanglement import fidelity

    direct = fidelity(trunc, genuine)
    formula = None
    if config.beta >= FORMULA_MIN_BETA:
        formula = fidelity_formula(config, term_count, herald)
    return formula, direct
