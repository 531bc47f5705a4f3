"""Cat state mixed with a delocalized photon on one beam splitter.

Mode 1 carries an even (or odd) cat of amplitude beta, modes 2 and 3 share
one photon as a0|0>_2|1>_3 + a1|1>_2|0>_3. Modes 1 and 2 meet on a beam
splitter with transmittance t and mode 2 is measured. For n photons
detected the output is

    a0 c0n/N_pc |cat of parity p>|1>_3 + a1 (u |cat, 1-p> + v |SDSPS, 1-p>)|0>_3

up to the common factor N_in F(beta r). Here x = beta t, y = beta r,
c0n = c_0n(y), c1n = c_1n(y), u = t c1n / N_cat(x) and v = r c0n / N_sdsps(x).
The photon-branch parity is p = (n + input parity) mod 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .. import states
from ..errors import DegenerateState, InfiniteCoefficient, InvalidConfig
from ..fock import cutoff_for
from ..hybrid import VACUUM_PHOTON_LABELS, HybridState, from_unnormalized

NORM_TOL = 1e-12


def _check_amplitudes(a0: complex, a1: complex):
    total = abs(a0) ** 2 + abs(a1) ** 2
    if abs(total - 1.0) > NORM_TOL:
        raise InvalidConfig(f"|a0|^2 + |a1|^2 = {total!r}, expected 1")


@dataclass(frozen=True)
class SchemeConfig:
    a0: complex
    a1: complex
    beta: float
    t: float
    input_parity: str = "even"

    def __post_init__(self):
        object.__setattr__(self, "a0", complex(self.a0))
        object.__setattr__(self, "a1", complex(self.a1))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "t", float(self.t))
        _check_amplitudes(self.a0, self.a1)
        if self.input_parity not in ("even", "odd"):
            raise InvalidConfig(f"input_parity must be 'even' or 'odd', got {self.input_parity!r}")
        if self.beta < 0:
            raise InvalidConfig(f"beta must be >= 0, got {self.beta}")
        if not 0.0 <= self.t <= 1.0:
            raise InvalidConfig(f"t must lie in [0, 1], got {self.t}")

    @classmethod
    def balanced(cls, beta: float, t: float, **kw) -> "SchemeConfig":
        s = 1 / math.sqrt(2)
        return cls(s, s, beta, t, **kw)

    @classmethod
    def from_a0_squared(cls, a0sq: float, beta: float, t: float, **kw) -> "SchemeConfig":
        if not 0.0 <= a0sq <= 1.0:
            raise InvalidConfig(f"a0^2 must lie in [0, 1], got {a0sq}")
        return cls(math.sqrt(a0sq), math.sqrt(1 - a0sq), beta, t, **kw)

    @property
    def r(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.t * self.t))

    @property
    def parity_bit(self) -> int:
        return 0 if self.input_parity == "even" else 1

    def require_analytic(self):
        """Closed forms need beta > 0 and 0 < t < 1; the edges are oracle-only."""
        if self.beta <= 0.0:
            raise DegenerateState("closed forms are singular at beta = 0; use the oracle engine")
        if not 0.0 < self.t < 1.0:
            raise DegenerateState(f"closed forms need 0 < t < 1, got t = {self.t}")


@dataclass(frozen=True)
class HeraldSplit:
    """Closed-form pieces of the output for one herald value."""

    n: int
    p: int
    x: float
    y: float
    c0: float
    c1: float
    photon_amp: float
    u: float
    v: float
    vac_norm: float
    n_in: float
    envelope: float

    @property
    def photon_kind(self) -> str:
        return "ev0" if self.p == 0 else "odd0"

    @property
    def vacuum_kinds(self) -> tuple[str, str]:
        return ("odd0", "odd1") if self.p == 0 else ("ev0", "ev1")


def herald_split(config: SchemeConfig, n: int, beta: float | None = None) -> HeraldSplit:
    config.require_analytic()
    if n < 0:
        raise InvalidConfig(f"herald must be >= 0, got {n}")
    beta = config.beta if beta is None else beta
    t, r = config.t, config.r
    x, y = beta * t, beta * r
    c0 = states.displaced_amplitude(0, n, y).real
    c1 = states.displaced_amplitude(1, n, y).real
    p = (n + config.parity_bit) % 2
    if p == 0:
        pc, vs, vd = "ev0", "odd0", "odd1"
        cross = states.overlap_scs_odd_sdsps_odd(x)
    else:
        pc, vs, vd = "odd0", "ev0", "ev1"
        cross = states.overlap_scs_even_sdsps_even(x)
    photon_amp = c0 / states.normalization(pc, x)
    u = t * c1 / states.normalization(vs, x)
    v = r * c0 / states.normalization(vd, x)
    vac2 = u * u + v * v + 2 * u * v * cross
    in_kind = "ev0" if config.parity_bit == 0 else "odd0"
    return HeraldSplit(
        n=n, p=p, x=x, y=y, c0=c0, c1=c1,
        photon_amp=photon_amp, u=u, v=v,
        vac_norm=math.sqrt(max(vac2, 0.0)),
        n_in=states.normalization(in_kind, beta),
        envelope=states.envelope(y),
    )


def _sign(v: float) -> float:
    return -1.0 if v < 0 else 1.0


def coefficient_A(config: SchemeConfig, n: int) -> float:
    """Ratio of the SDSPS to the cat amplitude inside the vacuum-branch state."""
    s = herald_split(config, n)
    if s.c1 == 0.0 or s.u == 0.0:
        raise InfiniteCoefficient(f"A diverges at beta r = sqrt({n})")
    return s.v / s.u


def coefficient_B(config: SchemeConfig, n: int) -> float:
    """Entangling parameter; finite across the zeros of c_1n(beta r).

    Computed as sign(c1n) * ||u|cat> + v|SDSPS>|| * N_pc(x) / c0n, so the
    c1n factor never appears in a denominator. The sign matches the
    A-based expression wherever that one is finite.
    """
    s = herald_split(config, n)
    if s.photon_amp == 0.0:
        raise DegenerateState("photon branch vanishes (c_0n(beta r) = 0)")
    return _sign(s.c1) * s.vac_norm / s.photon_amp


def total_norm(config: SchemeConfig, B: complex) -> float:
    return (abs(config.a0) ** 2 + abs(config.a1) ** 2 * abs(B) ** 2) ** -0.5


def success_probability(config: SchemeConfig, n: int) -> float:
    s = herald_split(config, n)
    branch = abs(config.a0) ** 2 * s.photon_amp**2 + abs(config.a1) ** 2 * s.vac_norm**2
    return (s.n_in * s.envelope) ** 2 * branch


def printed_probability(config: SchemeConfig, n: int) -> float:
    """Probability assembled literally from the A, N_2m, B and N^(t) formulas.

    Only defined for the even-cat input; diverges where c_1n(beta r) = 0.
    """
    if config.input_parity != "even":
        raise InvalidConfig("the printed probability formulas assume the even cat input")
    s = herald_split(config, n)
    x, t = s.x, config.t
    A = coefficient_A(config, n)
    if s.p == 0:
        nn = (1 + A * A - 4 * states.normalization("odd0", x) * states.normalization("odd1", x)
              * math.exp(-2 * x * x) * 2 * x * A) ** -0.5
        B = t * s.c1 * states.normalization("ev0", x) / (s.c0 * states.normalization("odd0", x)) / nn
        ratio = states.normalization("ev0", config.beta) / states.normalization("ev0", x)
    else:
        nn = (1 + A * A + 4 * states.normalization("ev0", x) * states.normalization("ev1", x)
              * math.exp(-2 * x * x) * 2 * x * A) ** -0.5
        B = t * s.c1 * states.normalization("odd0", x) / (s.c0 * states.normalization("ev0", x)) / nn
        ratio = states.normalization("ev0", config.beta) / states.normalization("odd0", x)
    nt = total_norm(config, B)
    return s.envelope**2 * s.c0**2 * nt**-2 * ratio**2


def build_conditional_state(config: SchemeConfig, n: int, cutoff: int | None = None) -> HybridState:
    s = herald_split(config, n)
    if cutoff is None:
        cutoff = cutoff_for(config.beta, 1)
    if s.photon_amp == 0.0:
        raise DegenerateState("photon branch vanishes (c_0n(beta r) = 0)")
    photon_cv = states.terms_to_vector(states.component_terms(s.photon_kind, s.x), cutoff)
    vs, vd = s.vacuum_kinds
    sgn = _sign(s.c1)
    vac_terms = states.scale_terms(sgn * s.u / s.vac_norm, states.component_terms(vs, s.x))
    vac_terms += states.scale_terms(sgn * s.v / s.vac_norm, states.component_terms(vd, s.x))
    vacuum_cv = states.terms_to_vector(vac_terms, cutoff)
    B = sgn * s.vac_norm / s.photon_amp
    coeffs = {"B": B, "c0": s.c0, "c1": s.c1}
    if s.u != 0.0:
        coeffs["A"] = s.v / s.u
    prob = (s.n_in * s.envelope) ** 2 * (
        abs(config.a0) ** 2 * s.photon_amp**2 + abs(config.a1) ** 2 * s.vac_norm**2
    )
    return from_unnormalized(
        [
            ("vacuum", 0, config.a1 * sgn * s.vac_norm, vacuum_cv, None),
            ("photon", 1, config.a0 * s.photon_amp, photon_cv, None),
        ],
        total_norm=total_norm(config, B),
        probability=prob,
        coefficients=coeffs,
        dv_labels=VACUUM_PHOTON_LABELS,
        meta={"scheme": "fig1a", "herald": n, "photon_parity": s.p},
    )


def negativity(config: SchemeConfig, n: int) -> float:
    from ..entanglement import negativity_analytic

    return negativity_analytic(config.a0, config.a1, coefficient_B(config, n))


__all__ = [
    "SchemeConfig",
    "HeraldSplit",
    "herald_split",
    "coefficient_A",
    "coefficient_B",
    "success_probability",
    "printed_probability",
    "build_conditional_state",
    "negativity",
    "total_norm",
]
