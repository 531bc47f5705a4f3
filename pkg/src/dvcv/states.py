"""Closed-form single-mode states built from displaced number states.

Everything here is evaluated from the expansion
|n, alpha> = F(alpha) sum_m c_nm(alpha) |m>,  F(alpha) = exp(-|alpha|^2 / 2),
for n in {0, 1, 2}. The Fock engine is not used, so these vectors can be
checked against it independently.

Superpositions of displaced number states are described as tuples of
``(coefficient, n, amplitude)`` terms. Their inner products come from the
Laguerre form of <m|D(alpha)|n>, which gives Gram matrices without building
vectors.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Sequence

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from .errors import DegenerateState, OutOfRange
from .fock import FockVector, ModeLayout, cutoff_for

Term = tuple[complex, int, complex]

NORMALIZATION_KINDS = ("ev0", "odd0", "ev1", "odd1", "ev2", "odd2")
CV_KINDS = (
    "scs_even",
    "scs_odd",
    "sdsps_even",
    "sdsps_odd",
    "sdtps_even",
    "sdtps_odd",
    "psi_2m",
    "psi_2m1",
    "truncated_scs",
)


def envelope(alpha: complex) -> float:
    """F(alpha) = exp(-|alpha|^2 / 2)."""
    return math.exp(-0.5 * abs(alpha) ** 2)


def displaced_amplitudes(n: int, alpha: complex, size: int) -> np.ndarray:
    """c_nm(alpha) for m = 0 .. size-1, without the envelope.

    Built from c_0m = alpha^m / sqrt(m!) and the identities
    c_1m = sqrt(m) c_0,m-1 - alpha* c_0m and
    c_2m = (sqrt(m(m-1)) c_0,m-2 - 2 sqrt(m) alpha* c_0,m-1 + alpha*^2 c_0m) / sqrt(2),
    which avoid negative powers of alpha.
    """
    if n not in (0, 1, 2):
        raise OutOfRange(f"displaced amplitudes are implemented for n in 0..2, got {n}")
    alpha = complex(alpha)
    c0 = np.empty(size, dtype=np.complex128)
    if size == 0:
        return c0
    c0[0] = 1.0
    for m in range(1, size):
        c0[m] = c0[m - 1] * alpha / math.sqrt(m)
    if n == 0:
        return c0
    m = np.arange(size, dtype=float)
    ca = alpha.conjugate()
    shift1 = np.zeros(size, dtype=np.complex128)
    shift1[1:] = np.sqrt(m[1:]) * c0[:-1]
    if n == 1:
        return shift1 - ca * c0
    shift2 = np.zeros(size, dtype=np.complex128)
    shift2[2:] = np.sqrt(m[2:] * (m[2:] - 1)) * c0[:-2]
    return (shift2 - 2 * ca * shift1 + ca * ca * c0) / math.sqrt(2)


def displaced_amplitude(n: int, m: int, alpha: complex) -> complex:
    """c_nm(alpha) = exp(|alpha|^2/2) <m|n, alpha>."""
    if m < 0:
        raise OutOfRange(f"Fock index must be non-negative, got {m}")
    return complex(displaced_amplitudes(n, alpha, m + 1)[m])


def parity_flip_identity_check(n: int, m: int, alpha: complex, tol: float = 1e-12) -> bool:
    """Whether c_nm(-alpha) = (-1)^(m-n) c_nm(alpha) holds to ``tol``."""
    lhs = displaced_amplitude(n, m, -alpha)
    rhs = (-1) ** ((m - n) % 2) * displaced_amplitude(n, m, alpha)
    return abs(lhs - rhs) <= tol * max(1.0, abs(rhs))


def normalization(kind: str, x: float) -> float:
    """Normalization of the two-term superpositions of displaced |0>, |1>, |2>.

    ev/odd refer to Fock-support parity; 0, 1, 2 to the displaced number
    state. Raises DegenerateState where the superposition vanishes.
    """
    x = float(x)
    if x < 0:
        raise OutOfRange(f"normalizations take x >= 0, got {x}")
    x2 = x * x
    e = math.exp(-2 * x2)
    em1 = -math.expm1(-2 * x2)  # 1 - e, accurate for small x
    if kind == "ev0":
        s = 1 + e
    elif kind == "odd0":
        s = em1
    elif kind == "ev1":
        s = em1 + 4 * x2 * e
    elif kind == "odd1":
        s = 1 + e * (1 - 4 * x2)
    elif kind == "ev2":
        s = 1 + e * (1 - 8 * x2 + 8 * x2 * x2)
    elif kind == "odd2":
        s = em1 + e * (8 * x2 - 8 * x2 * x2)
    else:
        raise ValueError(f"unknown normalization kind {kind!r}")
    if s <= 0.0:
        raise DegenerateState(f"{kind} superposition vanishes at x={x}")
    return (2 * s) ** -0.5


def normalization_set(beta: float, t: float) -> dict[str, float]:
    """All normalizations at beta*t, plus those at beta where defined."""
    out = {}
    for where, x in (("bt", beta * t), ("b", beta)):
        for kind in NORMALIZATION_KINDS:
            try:
                out[f"{kind}@{where}"] = normalization(kind, x)
            except DegenerateState:
                continue
    return out


# named two-term superpositions -------------------------------------------

_SIGNS = {
    "ev0": (0, 1), "odd0": (0, -1),
    "ev1": (1, -1), "odd1": (1, 1),
    "ev2": (2, 1), "odd2": (2, -1),
}


def component_terms(kind: str, x: float) -> tuple[Term, ...]:
    """Terms of N(|n,-x> + s|n,x>) for the named normalization kind."""
    n, s = _SIGNS[kind]
    nrm = normalization(kind, x)
    return ((nrm, n, -x), (s * nrm, n, x))


def scale_terms(c: complex, terms: Iterable[Term]) -> tuple[Term, ...]:
    return tuple((c * a, n, alpha) for a, n, alpha in terms)


def dns_matrix_element(m: int, n: int, alpha: complex) -> complex:
    """<m|D(alpha)|n> from the associated Laguerre closed form."""
    alpha = complex(alpha)
    x = abs(alpha) ** 2
    lo, hi = min(m, n), max(m, n)
    k = hi - lo
    if x == 0.0:
        return 1.0 + 0j if k == 0 else 0j
    mag = math.exp(0.5 * (gammaln(lo + 1) - gammaln(hi + 1)) - 0.5 * x) * abs(alpha) ** k
    lag = eval_genlaguerre(lo, k, x)
    phase = cmath.exp(1j * cmath.phase(alpha))
    if m >= n:
        return mag * lag * phase**k
    return mag * lag * (-phase.conjugate()) ** k


def dns_overlap(m: int, gamma: complex, n: int, delta: complex) -> complex:
    """<m, gamma | n, delta> for displaced number states."""
    gamma, delta = complex(gamma), complex(delta)
    phase = cmath.exp(0.5 * (gamma.conjugate() * delta - gamma * delta.conjugate()))
    return phase * dns_matrix_element(m, n, delta - gamma)


def terms_overlap(a: Sequence[Term], b: Sequence[Term]) -> complex:
    return sum(
        ca.conjugate() * cb * dns_overlap(na, aa, nb, ab)
        for ca, na, aa in a
        for cb, nb, ab in b
    )


def gram_matrix(components: Sequence[Sequence[Term]]) -> np.ndarray:
    k = len(components)
    G = np.empty((k, k), dtype=np.complex128)
    for i in range(k):
        for j in range(i, k):
            G[i, j] = terms_overlap(components[i], components[j])
            G[j, i] = G[i, j].conjugate()
    return G


def combination_norm(weights: Sequence[complex], components: Sequence[Sequence[Term]]) -> float:
    """Norm of sum_i weights[i] |component_i> from the Gram matrix."""
    w = np.asarray(weights, dtype=np.complex128)
    val = float(np.real(np.vdot(w, gram_matrix(components) @ w)))
    return math.sqrt(max(val, 0.0))


# Fock vectors from closed forms -------------------------------------------


def terms_to_amplitudes(terms: Iterable[Term], cutoff: int) -> np.ndarray:
    out = np.zeros(cutoff + 1, dtype=np.complex128)
    for c, n, alpha in terms:
        if c == 0:
            continue
        out += c * envelope(alpha) * displaced_amplitudes(n, alpha, cutoff + 1)
    return out


def terms_to_vector(terms: Iterable[Term], cutoff: int, normalize: bool = False) -> FockVector:
    v = FockVector(ModeLayout((cutoff,)), terms_to_amplitudes(terms, cutoff))
    if normalize:
        if v.norm() == 0.0:
            raise DegenerateState("superposition vanishes identically")
        v = v.normalize()
    return v.check_tail()


def overlap_scs_odd_sdsps_odd(x: float) -> float:
    """<beta_-|1, odd> at amplitude x (the nonzero cross term of the odd pair)."""
    return -4 * normalization("odd0", x) * normalization("odd1", x) * x * math.exp(-2 * x * x)


def overlap_scs_even_sdsps_even(x: float) -> float:
    """<beta_+|1, even> at amplitude x."""
    return 4 * normalization("ev0", x) * normalization("ev1", x) * x * math.exp(-2 * x * x)


def psi_terms(parity: str, beta: float, A: complex) -> tuple[Term, ...]:
    """Unnormalized |beta_-> + A|1,odd> (parity "2m") or |beta_+> + A|1,even> ("2m1")."""
    if parity == "2m":
        base, extra = "odd0", "odd1"
    elif parity == "2m1":
        base, extra = "ev0", "ev1"
    else:
        raise ValueError(f"unknown psi parity {parity!r}")
    terms = component_terms(base, beta)
    if A != 0:
        terms += scale_terms(A, component_terms(extra, beta))
    return terms


def psi_normalization(parity: str, beta: float, A: complex) -> float:
    """N of N(|beta_-> + A|1,odd>) (or the even analogue), in closed form."""
    A = complex(A)
    if parity == "2m":
        cross = overlap_scs_odd_sdsps_odd(beta)
    else:
        cross = overlap_scs_even_sdsps_even(beta)
    s = 1 + abs(A) ** 2 + 2 * cross * A.real
    if s <= 0:
        raise DegenerateState("psi superposition vanishes")
    return s**-0.5


def truncated_scs_amplitudes(beta: float, n_terms: int) -> np.ndarray:
    """Unnormalized sum_{k<n_terms} beta^{2k}/sqrt((2k)!) |2k>."""
    if n_terms < 1:
        raise OutOfRange("truncated cat needs at least one term")
    c0 = displaced_amplitudes(0, beta, 2 * n_terms - 1)
    out = np.zeros(2 * n_terms - 1, dtype=np.complex128)
    out[::2] = c0[::2]
    return out


def build_cv_state(
    kind: str,
    beta: float,
    cutoff: int | None = None,
    A: complex = 0.0,
    n_terms: int = 2,
) -> FockVector:
    """Normalized single-mode vector of a named state at amplitude ``beta``."""
    beta = float(beta)
    if cutoff is None:
        cutoff = cutoff_for(beta, 0 if kind in ("scs_even", "scs_odd", "truncated_scs") else 2)
    if kind == "truncated_scs":
        amps = truncated_scs_amplitudes(beta, n_terms)
        if amps.size > cutoff + 1:
            raise OutOfRange(f"{n_terms}-term truncated cat needs cutoff >= {amps.size - 1}")
        full = np.zeros(cutoff + 1, dtype=np.complex128)
        full[: amps.size] = amps
        return FockVector(ModeLayout((cutoff,)), full).normalize()
    simple = {
        "scs_even": "ev0", "scs_odd": "odd0",
        "sdsps_even": "ev1", "sdsps_odd": "odd1",
        "sdtps_even": "ev2", "sdtps_odd": "odd2",
    }
    if kind in simple:
        terms = component_terms(simple[kind], beta)
    elif kind in ("psi_2m", "psi_2m1"):
        parity = kind.split("_")[1]
        terms = scale_terms(psi_normalization(parity, beta, A), psi_terms(parity, beta, A))
    else:
        raise ValueError(f"unknown state kind {kind!r}")
    return terms_to_vector(terms, cutoff, normalize=True)


def parity_mass(v: FockVector, parity: int) -> float:
    """Squared norm on Fock indices with n % 2 == parity (single mode)."""
    amps = v.tensor
    return float(np.sum(np.abs(amps[parity::2]) ** 2))
