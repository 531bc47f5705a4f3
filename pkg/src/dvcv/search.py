"""Maximal-entanglement solver and two-parameter sweeps over all schemes.

Parameters travel as a plain dict with keys a0, a1, beta, t and, per
scheme, beta1, t1 (two_photon), A (psi) or term_count (truncated). Heralds are
tuples: (n,) for the single-detector schemes, (n, k) for two_photon.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import brentq

from . import entanglement
from .errors import DegenerateState, DvcvError, InvalidConfig, NoSignChange
from .fock import cutoff_for
from .schemes import single_photon, two_photon, oracle, psi, truncated

SCHEMES = ("fig1a", "fig1b", "truncated", "psi")
QUANTITIES = ("probability", "negativity", "fidelity")
ENGINES = ("analytic", "oracle")
FREE_PARAMS = ("beta", "t", "a0_squared")
CONDITIONS = ("sqrt_ratio", "exact")
SCAN_POINTS = 64
FIDELITY_SCHEMES = ("truncated", "fig1b")
AXIS_NAMES = ("beta", "t", "beta1", "t1", "a0_squared", "A")
_ALIASES = {"a0sq": "a0_squared"}


def _herald(scheme: str, herald) -> tuple[int, ...]:
    h = (herald,) if isinstance(herald, int) else tuple(int(v) for v in herald)
    want = 2 if scheme == "fig1b" else 1
    if len(h) != want:
        raise InvalidConfig(f"scheme {scheme} takes {want} herald value(s), got {h}")
    if any(v < 0 for v in h):
        raise InvalidConfig(f"herald values must be >= 0, got {h}")
    return h


def with_free(params: Mapping[str, object], name: str, value: float) -> dict:
    """Copy of ``params`` with one parameter replaced; a0_squared sets a0 and a1."""
    p = dict(params)
    if name == "a0_squared":
        p["a0"], p["a1"] = math.sqrt(value), math.sqrt(max(0.0, 1.0 - value))
    else:
        p[name] = value
    return p


def make_config(scheme: str, params: Mapping[str, object]):
    s = 1 / math.sqrt(2)
    a0, a1 = params.get("a0", s), params.get("a1", s)
    beta, t = params["beta"], params["t"]
    if scheme in ("fig1a", "truncated"):
        return single_photon.SchemeConfig(a0, a1, beta, t, params.get("input_parity", "even"))
    if scheme == "fig1b":
        return two_photon.SchemeBConfig(a0, a1, beta, t, params["beta1"], params["t1"])
    if scheme == "psi":
        return psi.PsiSchemeConfig(a0, a1, beta, t, params.get("A", 0.0))
    raise InvalidConfig(f"unknown scheme {scheme!r}")


def entangling_parameter(scheme: str, params: Mapping[str, object], herald) -> complex:
    h = _herald(scheme, herald)
    cfg = make_config(scheme, params)
    if scheme == "fig1a":
        return single_photon.coefficient_B(cfg, h[0])
    if scheme == "fig1b":
        return two_photon.coefficient_B(cfg, *h)
    if scheme == "truncated":
        return truncated.entangling_B(cfg, int(params.get("term_count", 2)), h[0])
    return psi.psi_coefficients(cfg, h[0])["B"]


# evaluation ----------------------------------------------------------------


def _analytic(scheme, quantity, params, h):
    cfg = make_config(scheme, params)
    if scheme == "fig1a":
        if quantity == "probability":
            return single_photon.success_probability(cfg, h[0])
        if quantity == "negativity":
            return single_photon.negativity(cfg, h[0])
    elif scheme == "fig1b":
        if quantity == "probability":
            return two_photon.success_probability_b(cfg, *h)
        if quantity == "negativity":
            return two_photon.negativity_b(cfg, *h)
        return two_photon.approximation_fidelity(cfg, *h)
    elif scheme == "truncated":
        tc = int(params.get("term_count", 2))
        if quantity == "fidelity":
            return truncated.fidelity_to_genuine(cfg, tc, h[0])[1]
        state = truncated.build_truncated_conditional(cfg, tc, h[0])
        if quantity == "probability":
            return state.probability
        return entanglement.negativity_analytic(cfg.a0, cfg.a1, state.B)
    else:
        if quantity == "probability":
            return psi.psi_success_probability(cfg, h[0])
        if quantity == "negativity":
            return psi.psi_negativity(cfg, h[0])
    raise InvalidConfig(f"quantity {quantity!r} is not defined for scheme {scheme}")


def _oracle_input(scheme, params, cutoff):
    beta = float(params["beta"])
    if scheme == "truncated":
        return oracle.input_state("truncated_scs", beta, cutoff, n_terms=int(params.get("term_count", 2)))
    if scheme == "psi":
        return oracle.input_state("psi_2m", beta, cutoff, A=params.get("A", 0.0))
    kind = "scs_odd" if params.get("input_parity", "even") == "odd" else "scs_even"
    return oracle.input_state(kind, beta, cutoff)


def _oracle(scheme, quantity, params, h, cutoff):
    cfg = make_config(scheme, params)
    cutoff = cutoff_for(cfg.beta, int(scheme == "psi")) if cutoff is None else cutoff
    cv_in = _oracle_input(scheme, params, cutoff)
    if scheme == "fig1b":
        out = oracle.two_photon_output(cv_in, cfg.a0, cfg.a1, cfg.t, cfg.beta1, cfg.t1)
        rec = oracle.two_photon_outcome(out, *h)
    else:
        rec = oracle.single_photon_outcome(cv_in, cfg.a0, cfg.a1, cfg.t, h[0])
    if quantity == "probability":
        return rec.probability
    if rec.probability == 0.0:
        raise DegenerateState(f"herald {h} has zero probability")
    joint = oracle.two_photon_joint(rec) if scheme == "fig1b" else oracle.single_photon_joint(rec)
    if quantity == "negativity":
        return entanglement.negativity_numeric(entanglement.joint_density(joint))
    if scheme == "truncated":
        g = oracle.single_photon_outcome(oracle.input_state("scs_even", cfg.beta, cutoff), cfg.a0, cfg.a1, cfg.t, h[0])
        return entanglement.fidelity(joint, oracle.single_photon_joint(g))
    if scheme == "fig1b":
        approx = two_photon.build_approximate_conditional(cfg, *h)
        return entanglement.fidelity(joint, approx.joint_vector(joint.layout.cutoffs[0], joint.layout.cutoffs[1]))
    raise InvalidConfig(f"quantity {quantity!r} is not defined for scheme {scheme}")


def _check_quantity(scheme: str, quantity: str):
    if quantity == "fidelity" and scheme not in FIDELITY_SCHEMES:
        raise InvalidConfig(f"quantity 'fidelity' is defined only for schemes {', '.join(FIDELITY_SCHEMES)}")


def evaluate(scheme: str, quantity: str, params: Mapping[str, object], herald,
             engine: str = "analytic", cutoff: int | None = None) -> float:
    """One probability, negativity or fidelity value.

    fidelity means truncated-vs-genuine for the truncated scheme and
    approximate-vs-exact for two_photon; other schemes have none.
    """
    if quantity not in QUANTITIES:
        raise InvalidConfig(f"unknown quantity {quantity!r}")
    if engine not in ENGINES:
        raise InvalidConfig(f"unknown engine {engine!r}")
    _check_quantity(scheme, quantity)
    h = _herald(scheme, herald)
    if engine == "oracle":
        return float(_oracle(scheme, quantity, params, h, cutoff))
    return float(_analytic(scheme, quantity, params, h))


# solver --------------------------------------------------------------------


@dataclass(frozen=True)
class MaxEntanglementQuery:
    scheme: str
    herald: tuple[int, ...]
    fixed: Mapping[str, object]
    free: str
    bracket: tuple[float, float]
    condition: str = "sqrt_ratio"

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise InvalidConfig(f"unknown scheme {self.scheme!r}")
        object.__setattr__(self, "herald", _herald(self.scheme, self.herald))
        if self.free not in FREE_PARAMS:
            raise InvalidConfig(f"free parameter must be one of {FREE_PARAMS}, got {self.free!r}")
        if self.condition not in CONDITIONS:
            raise InvalidConfig(f"condition must be one of {CONDITIONS}, got {self.condition!r}")
        lo, hi = (float(v) for v in self.bracket)
        if not lo < hi:
            raise InvalidConfig(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
        domain = {"beta": (0.0, math.inf), "t": (0.0, 1.0), "a0_squared": (0.0, 1.0)}[self.free]
        if lo < domain[0] or hi > domain[1]:
            raise InvalidConfig(f"bracket ({lo}, {hi}) leaves the domain of {self.free}")
        object.__setattr__(self, "bracket", (lo, hi))
        taken = {"a0", "a1"} if self.free == "a0_squared" else {self.free}
        clash = taken & set(self.fixed)
        if clash:
            raise InvalidConfig(f"{sorted(clash)} cannot be both fixed and free")


@dataclass(frozen=True)
class Root:
    value: float
    residual: float
    probability: float
    negativity: float


def target_B(a0: complex, a1: complex, condition: str) -> float:
    """|B| giving maximal entanglement.

    "sqrt_ratio" is sqrt(|a0|/|a1|), the condition behind the tabulated
    settings; "exact" is |a0|/|a1|, where the closed-form negativity reaches
    1. Both agree for balanced amplitudes.
    """
    ratio = abs(a0) / abs(a1)
    return math.sqrt(ratio) if condition == "sqrt_ratio" else ratio


def _residual(query: MaxEntanglementQuery, x: float) -> float:
    p = with_free(query.fixed, query.free, x)
    cfg = make_config(query.scheme, p)
    if abs(cfg.a1) == 0.0:
        raise DegenerateState("a1 = 0 leaves nothing to entangle")
    B = entangling_parameter(query.scheme, p, query.herald)
    return abs(B) - target_B(cfg.a0, cfg.a1, query.condition)


def solve_max_entanglement(query: MaxEntanglementQuery) -> list[Root]:
    """All roots of |B| - target on the bracket.

    A 64-point scan isolates sign changes, then Brent's method refines
    each one. Cells where the residual cannot be evaluated are skipped.
    """
    xs = np.linspace(*query.bracket, SCAN_POINTS)
    gs = []
    for x in xs:
        try:
            gs.append(_residual(query, float(x)))
        except DvcvError:
            gs.append(math.nan)
    roots = []
    for i in range(SCAN_POINTS - 1):
        g0, g1 = gs[i], gs[i + 1]
        if math.isnan(g0) or math.isnan(g1):
            continue
        if g0 == 0.0:
            x = float(xs[i])
        elif g0 * g1 < 0:
            x = brentq(lambda v: _residual(query, v), xs[i], xs[i + 1], xtol=1e-15, rtol=1e-15, maxiter=200)
        else:
            continue
        res = _residual(query, x)
        if abs(res) > 1e-6:
            # sign flip across a pole rather than a root
            continue
        p = with_free(query.fixed, query.free, x)
        roots.append(Root(
            value=x,
            residual=res,
            probability=evaluate(query.scheme, "probability", p, query.herald),
            negativity=evaluate(query.scheme, "negativity", p, query.herald),
        ))
    if gs[-1] == 0.0:
        x = float(xs[-1])
        p = with_free(query.fixed, query.free, x)
        roots.append(Root(x, 0.0, evaluate(query.scheme, "probability", p, query.herald),
                          evaluate(query.scheme, "negativity", p, query.herald)))
    if not roots:
        raise NoSignChange(f"|B| - target keeps one sign on {query.bracket} for free={query.free}")
    return roots


# sweeps --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SweepGrid:
    axis1: tuple[str, np.ndarray]
    axis2: tuple[str, np.ndarray]
    quantity: str
    cells: np.ndarray
    flags: tuple[tuple[int, int, str], ...] = ()
    meta: Mapping[str, object] = field(default_factory=dict)

    def rows(self):
        (_, v1), (_, v2) = self.axis1, self.axis2
        for i, a in enumerate(v1):
            for j, b in enumerate(v2):
                yield float(a), float(b), float(self.cells[i, j])

    def to_csv(self) -> str:
        lines = ["axis1,axis2,value"]
        lines += [f"{a:.17g},{b:.17g},{v:.17g}" for a, b, v in self.rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = [[a, b, (None if math.isnan(v) else v)] for a, b, v in self.rows()]
        obj = {
            "columns": ["axis1", "axis2", "value"],
            "axes": [self.axis1[0], self.axis2[0]],
            "quantity": self.quantity,
            "rows": rows,
            "flags": [list(f) for f in self.flags],
            "meta": dict(self.meta),
        }
        return json.dumps(obj, indent=1) + "\n"


def parse_axis(spec: str) -> tuple[str, np.ndarray]:
    """'name:lo:hi:steps' into (name, values)."""
    parts = spec.split(":")
    if len(parts) != 4:
        raise InvalidConfig(f"axis must look like name:lo:hi:steps, got {spec!r}")
    name, lo, hi, steps = parts
    name = _ALIASES.get(name, name)
    if name not in AXIS_NAMES:
        raise InvalidConfig(f"cannot sweep {name!r}; axes are {', '.join(AXIS_NAMES)}")
    try:
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError as exc:
        raise InvalidConfig(f"bad number in axis {spec!r}") from exc
    if steps < 1:
        raise InvalidConfig(f"axis {name} needs at least one step")
    return name, np.linspace(lo, hi, steps)


def sweep(scheme: str, herald, quantity: str, axes: Sequence[tuple[str, Sequence[float]]],
          fixed: Mapping[str, object] | None = None, engine: str = "analytic",
          cutoff: int | None = None) -> SweepGrid:
    """Evaluate ``quantity`` on the product grid of two named axes.

    Cells that hit a degenerate configuration become NaN and are listed in
    ``flags``; evaluation order is row-major over axis1 then axis2.
    """
    if len(axes) != 2:
        raise InvalidConfig("sweep needs exactly two axes")
    (n1, v1), (n2, v2) = ((n, np.asarray(v, dtype=float)) for n, v in axes)
    for name in (n1, n2):
        if name not in ("beta", "t", "a0_squared", "beta1", "t1", "A"):
            raise InvalidConfig(f"cannot sweep over {name!r}")
    if n1 == n2:
        raise InvalidConfig("the two axes must differ")
    _check_quantity(scheme, quantity)
    fixed = dict(fixed or {})
    cells = np.empty((v1.size, v2.size))
    flags = []
    for i, a in enumerate(v1):
        for j, b in enumerate(v2):
            p = with_free(with_free(fixed, n1, float(a)), n2, float(b))
            try:
                cells[i, j] = evaluate(scheme, quantity, p, herald, engine, cutoff)
            except DvcvError as exc:
                cells[i, j] = math.nan
                flags.append((i, j, f"{type(exc).__name__}: {exc}"))
    meta = {"scheme": scheme, "herald": list(_herald(scheme, herald)), "engine": engine,
            "fixed": {k: _jsonable(v) for k, v in fixed.items()}, "cutoff": cutoff}
    return SweepGrid((n1, v1), (n2, v2), quantity, cells, tuple(flags), meta)


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag] if v.imag else v.real
    return v
