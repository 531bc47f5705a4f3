"""Cross-engine verification suite.

Every check compares one closed-form claim against the Fock oracle, a
printed table value, or a stated bound, and yields one record. A check
whose printed form disagrees while a consistent variant agrees is marked
``discrepancy-documented`` rather than ``fail``.

Report format: one JSON object per line with fields name, status,
measured, expected, tolerance, runtime_ms, then one summary line
``{"summary": {...}}``.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import entanglement, search, states
from .errors import DvcvError
from .fock import FockVector
from .schemes import single_photon, two_photon, oracle, psi, truncated

PASS, FAIL, DOCUMENTED = "pass", "fail", "discrepancy-documented"
STATUSES = (PASS, FAIL, DOCUMENTED)
PROFILES = ("default", "strict")

# tolerance per profile: single_photon/truncated oracle agreement, larger tensors,
# and probability agreement
_TOL = {
    "default": {"oracle": 1e-9, "oracle_large": 1e-8, "prob": 1e-9},
    "strict": {"oracle": 1e-10, "oracle_large": 1e-10, "prob": 1e-10},
}

BALANCED = 1 / math.sqrt(2)


@dataclass(frozen=True)
class Outcome:
    """Raw result of a check before status assignment.

    ``mode``: "abs" |m - e| <= tol, "rel" |m - e| <= tol |e|,
    "min" m >= e - tol, "max" m <= e + tol, "gt" m > e.
    ``documented`` is True when a self-consistent variant of a failing
    printed form passes.
    """

    measured: float
    expected: float
    tolerance: float
    mode: str = "abs"
    documented: bool = False

    def passed(self) -> bool:
        m, e, tol = self.measured, self.expected, self.tolerance
        if math.isnan(m):
            return False
        if self.mode == "abs":
            return abs(m - e) <= tol
        if self.mode == "rel":
            return abs(m - e) <= tol * abs(e)
        if self.mode == "min":
            return m >= e - tol
        if self.mode == "max":
            return m <= e + tol
        if self.mode == "gt":
            return m > e
        raise ValueError(f"unknown comparison {self.mode!r}")


@dataclass(frozen=True)
class CheckRecord:
    name: str
    status: str
    measured: float
    expected: float
    tolerance: float
    runtime_ms: float


@dataclass
class VerificationReport:
    checks: list[CheckRecord] = field(default_factory=list)
    profile: str = "default"

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts()[FAIL] == 0

    def summary(self) -> dict:
        return {"profile": self.profile, "total": len(self.checks), **self.counts()}

    def to_text(self) -> str:
        lines = [json.dumps(asdict(c)) for c in self.checks]
        lines.append(json.dumps({"summary": self.summary()}))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "VerificationReport":
        checks, profile = [], "default"
        for line in text.splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            if "summary" in obj:
                profile = obj["summary"]["profile"]
            else:
                checks.append(CheckRecord(**obj))
        return cls(checks, profile)


CheckFn = Callable[[dict], Outcome]
_REGISTRY: list[tuple[str, CheckFn]] = []


def check(name: str):
    def deco(fn: CheckFn) -> CheckFn:
        _REGISTRY.append((name, fn))
        return fn

    return deco


def registered_names() -> list[str]:
    return [n for n, _ in _REGISTRY]


def run_all(profile: str = "default", only: str | None = None) -> VerificationReport:
    """Run every registered check (or those whose name starts with ``only``)."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    tol = _TOL[profile]
    report = VerificationReport(profile=profile)
    for name, fn in _REGISTRY:
        if only and not name.startswith(only):
            continue
        t0 = time.perf_counter()
        try:
            out = fn(tol)
            status = PASS if out.passed() else (DOCUMENTED if out.documented else FAIL)
            rec = (out.measured, out.expected, out.tolerance)
        except DvcvError:
            status, rec = FAIL, (math.nan, math.nan, math.nan)
        ms = round((time.perf_counter() - t0) * 1e3, 3)
        report.checks.append(CheckRecord(name, status, float(rec[0]), float(rec[1]), float(rec[2]), ms))
    return report


# shared grids ----------------------------------------------------------------

STATE_GRID = list(itertools.product((0.3, 0.8, 1.5, 2.0), (0.2, 0.5, 0.8), range(5)))
B_SETTINGS = dict(beta=0.8, t=0.5, beta1=1.0, t1=0.95)
PSI_AMPS = (0.0, 0.5, 1.0)


def _single_photon_pair(beta, t, n, parity="even", a0=0.6, a1=0.8j):
    cfg = single_photon.SchemeConfig(a0, a1, beta, t, parity)
    kind = "scs_even" if parity == "even" else "scs_odd"
    rec = oracle.single_photon_outcome(oracle.input_state(kind, beta), a0, a1, t, n)
    return cfg, rec


# maximally entangled settings ---------------------------------------------------------------------

# (|a0|^2, beta, t, herald, printed probability)
MAX_ENTANGLEMENT_ROWS = (
    (0.5, 1.88492, 0.3, 0, 0.0394327),
    (0.5, 1.56391, 0.5, 0, 0.159716),
    (0.5, 1.70713, 0.8, 0, 0.350236),
    (0.4796, 0.1, 0.2, 0, 0.969829),
    (0.36, 0.1, 0.5, 0, 0.833727),
    (0.11486, 0.2, 0.8, 0, 0.427518),
    (0.4797, 0.6, 0.2, 0, 0.693138),
    (0.5, 1.26429, 0.8, 1, 0.270754),
    (0.5, 1.47621, 0.9, 1, 0.262298),
    (0.97767, 0.8, 0.8, 1, 0.09011),
    (0.96389, 1.0, 0.9, 1, 0.127707),
    (0.85578, 1.2, 0.9, 1, 0.214779),
    (0.44517, 1.3, 0.8, 1, 0.266999),
)
ROW_TOL = 1e-3


def row_config(row) -> single_photon.SchemeConfig:
    a0sq, beta, t, _, _ = row
    if a0sq == 0.5:
        return single_photon.SchemeConfig.balanced(beta, t)
    return single_photon.SchemeConfig.from_a0_squared(a0sq, beta, t)


def input_ratio(beta: float, t: float) -> float:
    """(N_ev0(beta) / N_ev0(beta t))^2, the factor absent from the even-herald table values."""
    return (states.normalization("ev0", beta) / states.normalization("ev0", beta * t)) ** 2


def _row_negativity(row):
    def fn(tol):
        cfg = row_config(row)
        B = single_photon.coefficient_B(cfg, row[3])
        neg = entanglement.negativity_analytic(cfg.a0, cfg.a1, B)
        # the row was built from |B| = sqrt(|a0|/|a1|); that choice is documented
        target = search.target_B(cfg.a0, cfg.a1, "sqrt_ratio")
        return Outcome(neg, 1.0, ROW_TOL, documented=abs(abs(B) - target) <= ROW_TOL)

    return fn


def _row_probability(row):
    def fn(tol):
        cfg = row_config(row)
        p = single_photon.success_probability(cfg, row[3])
        variant = p / input_ratio(cfg.beta, cfg.t)
        return Outcome(p, row[4], ROW_TOL, "rel",
                       documented=abs(variant - row[4]) <= ROW_TOL * row[4])

    return fn


for _i, _row in enumerate(MAX_ENTANGLEMENT_ROWS, 1):
    check(f"max_entanglement.row{_i:02d}.negativity")(_row_negativity(_row))
    check(f"max_entanglement.row{_i:02d}.probability")(_row_probability(_row))


def _solve(scheme, herald, fixed, free, bracket, near):
    q = search.MaxEntanglementQuery(scheme, herald, fixed, free, bracket)
    roots = search.solve_max_entanglement(q)
    return min((r.value for r in roots), key=lambda v: abs(v - near))


@check("max_entanglement.solver.beta_herald0")
def _(tol):
    return Outcome(_solve("fig1a", (0,), {"t": 0.3}, "beta", (1.5, 2.2), 1.88492), 1.88492, ROW_TOL)


@check("max_entanglement.solver.beta_herald1")
def _(tol):
    return Outcome(_solve("fig1a", (1,), {"t": 0.8}, "beta", (1.0, 1.5), 1.26429), 1.26429, ROW_TOL)


@check("max_entanglement.solver.a0_squared")
def _(tol):
    v = _solve("fig1a", (0,), {"beta": 0.1, "t": 0.2}, "a0_squared", (0.01, 0.99), 0.4796)
    return Outcome(v, 0.4796, ROW_TOL)


# single-photon scheme ---------------------------------------------------------


@check("single_photon.oracle.state_fidelity")
def _(tol):
    worst = 0.0
    for beta, t, n in STATE_GRID:
        cfg, rec = _single_photon_pair(beta, t, n)
        f = entanglement.fidelity(single_photon.build_conditional_state(cfg, n), oracle.single_photon_joint(rec))
        worst = max(worst, 1 - f)
    return Outcome(worst, 0.0, tol["oracle"], "max")


@check("single_photon.oracle.odd_input_fidelity")
def _(tol):
    worst = 0.0
    for beta, t, n in STATE_GRID:
        cfg, rec = _single_photon_pair(beta, t, n, "odd")
        f = entanglement.fidelity(single_photon.build_conditional_state(cfg, n), oracle.single_photon_joint(rec))
        worst = max(worst, 1 - f)
    return Outcome(worst, 0.0, tol["oracle"], "max")


@check("single_photon.oracle.probability")
def _(tol):
    worst = 0.0
    for beta, t, n in STATE_GRID:
        cfg, rec = _single_photon_pair(beta, t, n)
        worst = max(worst, abs(single_photon.success_probability(cfg, n) - rec.probability))
    return Outcome(worst, 0.0, tol["prob"], "max")


@check("single_photon.printed_probability_formula")
def _(tol):
    """Printed A/B/N^(t) assembly against the direct probability."""
    worst = 0.0
    for beta, t, n in STATE_GRID:
        cfg = single_photon.SchemeConfig(0.6, 0.8, beta, t)
        try:
            printed = single_photon.printed_probability(cfg, n)
        except DvcvError:
            continue
        p = single_photon.success_probability(cfg, n)
        worst = max(worst, abs(printed - p) / p)
    return Outcome(worst, 0.0, 1e-10, "max")


@check("single_photon.completeness")
def _(tol):
    worst = 1.0
    for beta, t in itertools.product(np.linspace(0.1, 2.0, 8), (0.2, 0.5, 0.8)):
        cfg = single_photon.SchemeConfig.balanced(float(beta), t)
        nmax = oracle.cutoff_for(beta) + 1
        worst = min(worst, sum(single_photon.success_probability(cfg, n) for n in range(nmax + 1)))
    return Outcome(worst, 1.0, 1e-8, "min")


@check("single_photon.B_continuity")
def _(tol):
    """|B_1| across beta r = 1, where A diverges.

    The sign of B follows c_1n and flips there, together with the sign of
    the vacuum-branch CV state, so only |B| is continuous.
    """
    t = 0.6
    r = math.sqrt(1 - t * t)
    xs = 1 / r + np.linspace(-1e-6, 1e-6, 21)
    vals = [abs(single_photon.coefficient_B(single_photon.SchemeConfig.balanced(float(b), t), 1)) for b in xs]
    return Outcome(float(np.max(np.abs(np.diff(vals)))), 0.0, 1e-5, "max")


# two-photon scheme -------------------------------------------------------------


def _two_photon_output():
    s = B_SETTINGS
    return oracle.two_photon_output(oracle.input_state("scs_even", s["beta"]), BALANCED, BALANCED,
                               s["t"], s["beta1"], s["t1"])


@check("two_photon.oracle.state_fidelity")
def _(tol):
    cfg = two_photon.SchemeBConfig.balanced(**B_SETTINGS)
    out = _two_photon_output()
    worst = 0.0
    for n, k in itertools.product(range(3), range(3)):
        joint = oracle.two_photon_joint(oracle.two_photon_outcome(out, n, k))
        worst = max(worst, 1 - entanglement.fidelity(two_photon.build_exact_conditional(cfg, n, k), joint))
    return Outcome(worst, 0.0, tol["oracle_large"], "max")


@check("two_photon.probability_reading.indexed")
def _(tol):
    cfg = two_photon.SchemeBConfig.balanced(**B_SETTINGS)
    out = _two_photon_output()
    worst = 0.0
    for n, k in itertools.product(range(3), range(3)):
        p = oracle.two_photon_outcome(out, n, k).probability
        worst = max(worst, abs(two_photon.printed_probability_b(cfg, n, k, "indexed") - p))
    return Outcome(worst, 0.0, tol["oracle_large"], "max")


@check("two_photon.probability_reading.printed")
def _(tol):
    cfg = two_photon.SchemeBConfig.balanced(**B_SETTINGS)
    out = _two_photon_output()
    worst = worst_indexed = 0.0
    for n, k in itertools.product(range(3), range(3)):
        p = oracle.two_photon_outcome(out, n, k).probability
        worst = max(worst, abs(two_photon.printed_probability_b(cfg, n, k, "printed") - p))
        worst_indexed = max(worst_indexed, abs(two_photon.success_probability_b(cfg, n, k) - p))
    return Outcome(worst, 0.0, tol["oracle_large"], "max",
                   documented=worst_indexed <= tol["oracle_large"])


@check("two_photon.completeness")
def _(tol):
    cfg = two_photon.SchemeBConfig.balanced(**B_SETTINGS)
    nmax, kmax = oracle.cutoff_for(cfg.beta) + 1, oracle.cutoff_for(cfg.beta1) + 1
    total = sum(two_photon.success_probability_b(cfg, n, k)
                for n in range(nmax + 1) for k in range(kmax + 1))
    return Outcome(total, 1.0, 1e-6, "min")


@check("two_photon.approximation_formula")
def _(tol):
    """Closed-form approximation fidelity against the oracle exact state."""
    cfg = two_photon.SchemeBConfig.balanced(**B_SETTINGS)
    out = _two_photon_output()
    worst = 0.0
    for n, k in itertools.product(range(3), range(3)):
        joint = oracle.two_photon_joint(oracle.two_photon_outcome(out, n, k))
        approx = two_photon.build_approximate_conditional(cfg, n, k)
        f = entanglement.fidelity(joint, approx.joint_vector(*joint.layout.cutoffs[:2]))
        worst = max(worst, abs(f - two_photon.approximation_fidelity(cfg, n, k)))
    return Outcome(worst, 0.0, tol["oracle_large"], "max")


APPROX_GRID = list(itertools.product((0.2, 0.5, 1.0), (0.01, 0.03, 0.05)))


@check("two_photon.approximation_high_fidelity")
def _(tol):
    """Minimum over beta1 <= 1, r1 <= 0.05 and heralds up to (2, 2)."""
    worst = 1.0
    for beta1, r1 in APPROX_GRID:
        cfg = two_photon.SchemeBConfig.balanced(0.8, 0.5, beta1, math.sqrt(1 - r1 * r1))
        for n, k in itertools.product(range(3), range(3)):
            worst = min(worst, two_photon.approximation_fidelity(cfg, n, k))
    return Outcome(worst, 0.99, 0.0, "min")


@check("two_photon.small_beta_p1k")
def _(tol):
    """P10, P11 below 0.05 for beta <= 1 (t1 = 0.95, beta1 = 1)."""
    worst = 0.0
    for beta, t in itertools.product(np.linspace(0.05, 1.0, 20), np.linspace(0.02, 0.98, 25)):
        cfg = two_photon.SchemeBConfig.balanced(float(beta), float(t), 1.0, 0.95)
        worst = max(worst, *(two_photon.success_probability_b(cfg, 1, k) for k in (0, 1)))
    return Outcome(worst, 0.05, 0.0, "max")


@check("two_photon.p1k_range")
def _(tol):
    """max(P10, P11) over the full (beta, t) grid, claimed <= 0.12."""
    worst = 0.0
    for beta, t in itertools.product(np.linspace(0.05, 2.5, 50), np.linspace(0.02, 0.98, 50)):
        cfg = two_photon.SchemeBConfig.balanced(float(beta), float(t), 1.0, 0.95)
        worst = max(worst, *(two_photon.success_probability_b(cfg, 1, k) for k in (0, 1)))
    return Outcome(worst, 0.12, 0.0, "max")


# truncated cats ----------------------------------------------------------------

TRUNC_CASES = list(itertools.product((2, 3), (0, 1)))


@check("truncated.oracle.state_fidelity")
def _(tol):
    worst = 0.0
    for beta, t in itertools.product((0.1, 0.5, 1.0, 1.5), (0.2, 0.5, 0.8)):
        cfg = single_photon.SchemeConfig(0.6, 0.8, beta, t)
        for tc, h in TRUNC_CASES:
            rec = oracle.single_photon_outcome(oracle.input_state("truncated_scs", beta, n_terms=tc), 0.6, 0.8, t, h)
            f = entanglement.fidelity(truncated.build_truncated_conditional(cfg, tc, h), oracle.single_photon_joint(rec))
            worst = max(worst, 1 - f)
    return Outcome(worst, 0.0, tol["oracle"], "max")


def _worst_pair(pairs):
    """(printed, reference) with the largest gap, and the largest corrected gap."""
    worst = max(pairs, key=lambda p: abs(p[0] - p[1]))
    return worst, max(abs(c - ref) for _, ref, c in pairs)


def _trunc_B(tc, h):
    """Closed-form |B| (measured) against the state's branch-norm ratio (expected)."""
    def fn(tol):
        pairs = []
        for beta, t in itertools.product((0.3, 0.8, 1.5), (0.2, 0.5, 0.8)):
            cfg = single_photon.SchemeConfig.balanced(beta, t)
            b = truncated.build_truncated_conditional(cfg, tc, h).B
            pairs.append((truncated.entangling_B(cfg, tc, h, "printed"), b, truncated.entangling_B(cfg, tc, h)))
        (printed, ref, _), gap = _worst_pair(pairs)
        return Outcome(printed, ref, 1e-10, documented=gap <= 1e-10)

    return fn


def _fidelity_formula(tc, h):
    """Typeset fidelity formula (measured) against the direct inner product (expected)."""
    def fn(tol):
        pairs = []
        for beta, t in itertools.product(np.linspace(0.1, 1.5, 8), (0.2, 0.5, 0.8)):
            cfg = single_photon.SchemeConfig.balanced(float(beta), t)
            _, direct = truncated.fidelity_to_genuine(cfg, tc, h)
            pairs.append((truncated.fidelity_formula(cfg, tc, h, "printed"), direct,
                          truncated.fidelity_formula(cfg, tc, h, "corrected")))
        (printed, ref, _), gap = _worst_pair(pairs)
        return Outcome(printed, ref, 1e-9, documented=gap <= 1e-9)

    return fn


for _tc, _h in TRUNC_CASES:
    check(f"truncated.entangling_B.terms{_tc}.herald{_h}")(_trunc_B(_tc, _h))
for _tc, _h in TRUNC_CASES:
    check(f"truncated.fidelity_formula.terms{_tc}.herald{_h}")(_fidelity_formula(_tc, _h))


@check("truncated.fidelity_wide_range")
def _(tol):
    worst = 1.0
    for beta, t in itertools.product(np.linspace(0.05, 1.0, 10), np.linspace(0.05, 0.5, 10)):
        worst = min(worst, truncated.fidelity_to_genuine(single_photon.SchemeConfig.balanced(float(beta), float(t)), 3, 0)[1])
    return Outcome(worst, 0.99, 0.0, "min")


@check("truncated.monotone_in_terms")
def _(tol):
    worst = math.inf
    for beta, t in itertools.product(np.linspace(0.1, 1.5, 8), (0.2, 0.5, 0.8)):
        cfg = single_photon.SchemeConfig.balanced(float(beta), t)
        for h in (0, 1):
            gap = truncated.fidelity_to_genuine(cfg, 3, h)[1] - truncated.fidelity_to_genuine(cfg, 2, h)[1]
            worst = min(worst, gap)
    return Outcome(worst, 0.0, 1e-12, "min")


# psi input ---------------------------------------------------------------------


def _psi_worst(reading, tol):
    worst = 0.0
    for A, n in itertools.product(PSI_AMPS, range(4)):
        cfg = psi.PsiSchemeConfig.balanced(0.8, 0.5, A)
        rec = oracle.single_photon_outcome(oracle.input_state("psi_2m", 0.8, A=A), cfg.a0, cfg.a1, cfg.t, n)
        f = entanglement.fidelity(psi.build_psi_conditional(cfg, n, reading=reading), oracle.single_photon_joint(rec))
        worst = max(worst, 1 - f)
    return worst


@check("psi.arbitration.corrected")
def _(tol):
    return Outcome(_psi_worst("corrected", tol), 0.0, tol["oracle_large"], "max")


@check("psi.arbitration.printed")
def _(tol):
    return Outcome(_psi_worst("printed", tol), 0.0, tol["oracle_large"], "max",
                   documented=_psi_worst("corrected", tol) <= tol["oracle_large"])


@check("psi.oracle.probability")
def _(tol):
    worst = 0.0
    for A, n in itertools.product(PSI_AMPS, range(4)):
        cfg = psi.PsiSchemeConfig.balanced(0.8, 0.5, A)
        rec = oracle.single_photon_outcome(oracle.input_state("psi_2m", 0.8, A=A), cfg.a0, cfg.a1, cfg.t, n)
        worst = max(worst, abs(psi.psi_success_probability(cfg, n) - rec.probability))
    return Outcome(worst, 0.0, tol["prob"], "max")


@check("psi.gram_norms")
def _(tol):
    worst = 0.0
    for A, n in itertools.product(PSI_AMPS, range(4)):
        br = psi.psi_branches(psi.PsiSchemeConfig.balanced(0.8, 0.5, A), n)
        for w, kinds, g in ((br.photon_weights, br.photon_kinds, psi.branch_norms(br)[0]),
                            (br.vacuum_weights, br.vacuum_kinds, psi.branch_norms(br)[1])):
            terms = ()
            for wi, k in zip(w, kinds):
                terms += states.scale_terms(wi, states.component_terms(k, br.x))
            direct = states.terms_to_vector(terms, oracle.cutoff_for(0.8)).norm()
            worst = max(worst, abs(direct - g))
    return Outcome(worst, 0.0, 1e-10, "max")


@check("psi.reduction_to_odd_cat")
def _(tol):
    worst = 0.0
    for n in range(4):
        cfg = psi.PsiSchemeConfig.balanced(0.8, 0.5, 0.0)
        f = entanglement.fidelity(psi.build_psi_conditional(cfg, n),
                                  single_photon.build_conditional_state(cfg.as_cat_config(), n))
        worst = max(worst, 1 - f)
    return Outcome(worst, 0.0, 1e-10, "max")


# entanglement ------------------------------------------------------------------


@check("entanglement.bell_state")
def _(tol):
    rho = entanglement.BipartiteDensity.from_pure(np.eye(2) / math.sqrt(2))
    return Outcome(entanglement.negativity_numeric(rho), 1.0, 1e-12)


@check("entanglement.product_state")
def _(tol):
    rho = entanglement.BipartiteDensity.from_pure(np.outer([0.6, 0.8j], [1, 0]))
    return Outcome(entanglement.negativity_numeric(rho), 0.0, 1e-10)


@check("entanglement.numeric_vs_closed_form.single_photon")
def _(tol):
    worst = 0.0
    for beta, t, n in STATE_GRID:
        cfg = single_photon.SchemeConfig(0.6, 0.8j, beta, t)
        h = single_photon.build_conditional_state(cfg, n)
        worst = max(worst, abs(entanglement.negativity_numeric(entanglement.hybrid_density(h))
                               - single_photon.negativity(cfg, n)))
    return Outcome(worst, 0.0, 1e-7, "max")


@check("entanglement.numeric_vs_closed_form.oracle")
def _(tol):
    worst = 0.0
    for beta, t, n in STATE_GRID:
        cfg, rec = _single_photon_pair(beta, t, n)
        num = entanglement.negativity_numeric(entanglement.joint_density(oracle.single_photon_joint(rec)))
        worst = max(worst, abs(num - single_photon.negativity(cfg, n)))
    return Outcome(worst, 0.0, 1e-7, "max")


@check("entanglement.numeric_vs_closed_form.two_photon")
def _(tol):
    cfg = two_photon.SchemeBConfig(0.6, 0.8, **B_SETTINGS)
    worst = 0.0
    for n, k in itertools.product(range(3), range(3)):
        for build in (two_photon.build_exact_conditional, two_photon.build_approximate_conditional):
            h = build(cfg, n, k)
            num = entanglement.negativity_numeric(entanglement.hybrid_density(h))
            worst = max(worst, abs(num - two_photon.negativity_b(cfg, n, k)))
    return Outcome(worst, 0.0, 1e-7, "max")


@check("entanglement.numeric_vs_closed_form.truncated")
def _(tol):
    worst = 0.0
    for beta, t in itertools.product((0.3, 0.8, 1.5), (0.2, 0.5, 0.8)):
        cfg = single_photon.SchemeConfig(0.6, 0.8, beta, t)
        for tc, h in TRUNC_CASES:
            s = truncated.build_truncated_conditional(cfg, tc, h)
            num = entanglement.negativity_numeric(entanglement.hybrid_density(s))
            worst = max(worst, abs(num - entanglement.negativity_analytic(cfg.a0, cfg.a1, s.B)))
    return Outcome(worst, 0.0, 1e-7, "max")


@check("entanglement.numeric_vs_closed_form.psi")
def _(tol):
    worst = 0.0
    for A, n in itertools.product(PSI_AMPS, range(4)):
        cfg = psi.PsiSchemeConfig(0.6, 0.8, 0.8, 0.5, A)
        s = psi.build_psi_conditional(cfg, n)
        num = entanglement.negativity_numeric(entanglement.hybrid_density(s))
        worst = max(worst, abs(num - psi.psi_negativity(cfg, n)))
    return Outcome(worst, 0.0, 1e-7, "max")


@check("entanglement.nonvanishing")
def _(tol):
    worst = math.inf
    for beta, t, n in itertools.product(np.linspace(0.05, 2.5, 25), np.linspace(0.05, 0.95, 19), range(4)):
        worst = min(worst, single_photon.negativity(single_photon.SchemeConfig.balanced(float(beta), float(t)), n))
    return Outcome(worst, 0.0, 0.0, "gt")


@check("entanglement.ditch.herald1_at_beta0")
def _(tol):
    v = search.evaluate("fig1a", "negativity", {"beta": 0.0, "t": 0.5}, 1, "oracle")
    return Outcome(v, 0.0, 1e-10)


@check("entanglement.ditch.herald0_at_beta0")
def _(tol):
    v = search.evaluate("fig1a", "negativity", {"beta": 0.0, "t": 0.5}, 0, "oracle")
    return Outcome(v, 0.0, 0.0, "gt")


# parity ------------------------------------------------------------------------


def _wrong_parity(v: FockVector, parity: int) -> float:
    return states.parity_mass(v, 1 - parity)


PHOTON_LABELS = ("photon", "01")


def _branch_parities(h, photon_parity: int):
    """(cv, expected parity); the a0 branch carries ``photon_parity``."""
    for b in h.branches:
        p = photon_parity if b.label in PHOTON_LABELS else 1 - photon_parity
        yield b.cv, p


@check("parity.purity")
def _(tol):
    worst = 0.0
    for beta, t, n in STATE_GRID:
        for parity in ("even", "odd"):
            cfg = single_photon.SchemeConfig(0.6, 0.8, beta, t, parity)
            h = single_photon.build_conditional_state(cfg, n)
            for cv, p in _branch_parities(h, h.meta["photon_parity"]):
                worst = max(worst, _wrong_parity(cv, p))
    cfg = two_photon.SchemeBConfig(0.6, 0.8, **B_SETTINGS)
    for n, k in itertools.product(range(3), range(3)):
        h = two_photon.build_exact_conditional(cfg, n, k)
        for cv, p in _branch_parities(h, n % 2):
            worst = max(worst, _wrong_parity(cv, p))
    for A, n in itertools.product(PSI_AMPS, range(4)):
        h = psi.build_psi_conditional(psi.PsiSchemeConfig(0.6, 0.8, 0.8, 0.5, A), n)
        for cv, p in _branch_parities(h, (n + 1) % 2):
            worst = max(worst, _wrong_parity(cv, p))
    for tc, hd in TRUNC_CASES:
        h = truncated.build_truncated_conditional(single_photon.SchemeConfig(0.6, 0.8, 0.8, 0.5), tc, hd)
        for cv, p in _branch_parities(h, hd % 2):
            worst = max(worst, _wrong_parity(cv, p))
    return Outcome(worst, 0.0, 1e-10, "max")


# qualitative claims --------------------------------------------------------------


@check("claims.p0_small_beta_t")
def _(tol):
    return Outcome(single_photon.success_probability(single_photon.SchemeConfig.balanced(0.05, 0.05), 0), 0.9, 0.0, "gt")


@check("claims.p0_grid_matches_oracle")
def _(tol):
    """25 cells of the 100x100 P0 grid re-evaluated with the oracle."""
    betas, ts = np.linspace(0.05, 2.5, 100), np.linspace(0.02, 0.98, 100)
    rng = np.random.default_rng(20241016)
    worst = 0.0
    for i, j in rng.integers(0, 100, size=(25, 2)):
        p = {"beta": float(betas[i]), "t": float(ts[j])}
        a = search.evaluate("fig1a", "probability", p, 0)
        o = search.evaluate("fig1a", "probability", p, 0, "oracle")
        worst = max(worst, abs(a - o))
    return Outcome(worst, 0.0, 1e-8, "max")
