"""Acceptance criteria 1-10.

Each test records one pass/fail line, printed in the terminal summary, and
asserts at the stated tolerance. Criteria that the closed forms do not meet
are left failing.
"""

import itertools
import math
import time

import numpy as np
import pytest

from conftest import record
from dvcv import entanglement, search, states, verify
from dvcv.schemes import single_photon, two_photon, oracle, psi, truncated

BETAS = (0.3, 0.8, 1.5, 2.0)
TS = (0.2, 0.5, 0.8)
HERALDS = range(5)
AUX = dict(beta1=1.0, t1=0.95)
A0, A1 = 0.6, 0.8j


def report(n, ok, detail):
    record(n, ok, detail)
    assert ok, detail


def test_criterion_01_max_entanglement_rows():
    bad_neg, bad_prob = [], []
    for i, row in enumerate(verify.MAX_ENTANGLEMENT_ROWS, 1):
        a0sq, beta, t, h, printed = row
        cfg = verify.row_config(row)
        neg = single_photon.negativity(cfg, h)
        p = single_photon.success_probability(cfg, h)
        if abs(neg - 1) > 1e-3:
            bad_neg.append(f"{i}:{neg:.4f}")
        if abs(p - printed) > 1e-3 * printed:
            bad_prob.append(f"{i}:{p:.6g}/{printed:.6g}")
    ok = not bad_neg and not bad_prob
    report(1, ok, f"negativity off in rows [{', '.join(bad_neg)}]; "
                  f"probability off in rows [{', '.join(bad_prob)}]" if not ok else "13 rows within 1e-3")


def test_criterion_02_probability_completeness():
    worst_a = 1.0
    for beta, t in itertools.product(np.linspace(0.0, 2.0, 41), (0.2, 0.5, 0.8)):
        beta = float(beta)
        cut = oracle.cutoff_for(beta)
        if beta == 0.0:
            out = oracle.single_photon_output(oracle.input_state("scs_even", beta), A0, A1, t)
            total = float(oracle.herald_distribution(out, [1])[: cut + 1].sum())
        else:
            cfg = single_photon.SchemeConfig(A0, A1, beta, t)
            total = sum(single_photon.success_probability(cfg, n) for n in range(cut + 1))
        worst_a = min(worst_a, total)
    cfg = two_photon.SchemeBConfig(A0, A1, 0.8, 0.5, **AUX)
    nmax, kmax = oracle.cutoff_for(0.8), oracle.cutoff_for(1.0)
    total_b = sum(two_photon.success_probability_b(cfg, n, k) for n in range(nmax + 1) for k in range(kmax + 1))
    ok = worst_a >= 1 - 1e-8 and total_b >= 1 - 1e-6
    report(2, ok, f"min single-photon sum {worst_a:.12f}, two-photon sum {total_b:.10f}")


def _two_photon_worst(beta, t):
    cfg = two_photon.SchemeBConfig(A0, A1, beta, t, **AUX)
    out = oracle.two_photon_output(oracle.input_state("scs_even", beta), A0, A1, t, AUX["beta1"], AUX["t1"])
    worst = 0.0
    for n, k in itertools.product(HERALDS, range(3)):
        rec = oracle.two_photon_outcome(out, n, k)
        if rec.probability < 1e-14:
            continue
        worst = max(worst, 1 - entanglement.fidelity(two_photon.build_exact_conditional(cfg, n, k), oracle.two_photon_joint(rec)))
    return worst


def test_criterion_03_oracle_equivalence():
    w_main = w_trunc = w_b = w_psi = 0.0
    for beta, t in itertools.product(BETAS, TS):
        cfg = single_photon.SchemeConfig(A0, A1, beta, t)
        cv_in = oracle.input_state("scs_even", beta)
        for n in HERALDS:
            rec = oracle.single_photon_outcome(cv_in, A0, A1, t, n)
            w_main = max(w_main, 1 - entanglement.fidelity(single_photon.build_conditional_state(cfg, n), oracle.single_photon_joint(rec)))
        for tc, h in itertools.product((2, 3), (0, 1)):
            rec = oracle.single_photon_outcome(oracle.input_state("truncated_scs", beta, n_terms=tc), A0, A1, t, h)
            s = truncated.build_truncated_conditional(cfg, tc, h)
            w_trunc = max(w_trunc, 1 - entanglement.fidelity(s, oracle.single_photon_joint(rec)))
        w_b = max(w_b, _two_photon_worst(beta, t))
        for A in (0.0, 0.5, 1.0):
            pc = psi.PsiSchemeConfig(A0, A1, beta, t, A)
            cv_in = oracle.input_state("psi_2m", beta, A=A)
            for n in HERALDS:
                rec = oracle.single_photon_outcome(cv_in, A0, A1, t, n)
                w_psi = max(w_psi, 1 - entanglement.fidelity(psi.build_psi_conditional(pc, n), oracle.single_photon_joint(rec)))
    ok = w_main <= 1e-9 and w_trunc <= 1e-9 and w_b <= 1e-8 and w_psi <= 1e-8
    report(3, ok, f"max infidelity: cat {w_main:.1e}, truncated {w_trunc:.1e}, "
                  f"two-photon {w_b:.1e}, psi {w_psi:.1e}")


def test_criterion_04_negativity_cross_check():
    worst = 0.0
    for beta, t in itertools.product(BETAS, TS):
        cfg = single_photon.SchemeConfig(A0, A1, beta, t)
        cv_in = oracle.input_state("scs_even", beta)
        for n in HERALDS:
            rec = oracle.single_photon_outcome(cv_in, A0, A1, t, n)
            num = entanglement.negativity_numeric(entanglement.joint_density(oracle.single_photon_joint(rec)))
            worst = max(worst, abs(num - single_photon.negativity(cfg, n)))
        for tc, h in itertools.product((2, 3), (0, 1)):
            s = truncated.build_truncated_conditional(cfg, tc, h)
            num = entanglement.negativity_numeric(entanglement.hybrid_density(s))
            worst = max(worst, abs(num - entanglement.negativity_analytic(A0, A1, truncated.entangling_B(cfg, tc, h))))
        for A in (0.0, 0.5, 1.0):
            pc = psi.PsiSchemeConfig(A0, A1, beta, t, A)
            for n in HERALDS:
                num = entanglement.negativity_numeric(entanglement.hybrid_density(psi.build_psi_conditional(pc, n)))
                worst = max(worst, abs(num - psi.psi_negativity(pc, n)))
    bcfg = two_photon.SchemeBConfig(A0, A1, 0.8, 0.5, **AUX)
    for n, k in itertools.product(HERALDS, range(3)):
        num = entanglement.negativity_numeric(entanglement.hybrid_density(two_photon.build_exact_conditional(bcfg, n, k)))
        worst = max(worst, abs(num - two_photon.negativity_b(bcfg, n, k)))
    bell = entanglement.negativity_numeric(entanglement.BipartiteDensity.from_pure(np.eye(2) / math.sqrt(2)))
    prod = entanglement.negativity_numeric(entanglement.BipartiteDensity.from_pure(np.outer([0.6, 0.8j], [1, 0])))
    ok = worst <= 1e-7 and abs(bell - 1) <= 1e-12 and abs(prod) <= 1e-10
    report(4, ok, f"max |numeric - closed form| {worst:.1e}; Bell {bell!r}; product {prod!r}")


def test_criterion_05_parity_purity():
    worst = 0.0

    def scan(state, photon_parity):
        nonlocal worst
        for b in state.branches:
            p = photon_parity if b.label in verify.PHOTON_LABELS else 1 - photon_parity
            worst = max(worst, states.parity_mass(b.cv, 1 - p))

    for beta, t in itertools.product(BETAS, TS):
        for parity in ("even", "odd"):
            cfg = single_photon.SchemeConfig(A0, A1, beta, t, parity)
            for n in HERALDS:
                s = single_photon.build_conditional_state(cfg, n)
                scan(s, s.meta["photon_parity"])
        cfg = single_photon.SchemeConfig(A0, A1, beta, t)
        for tc, h in itertools.product((2, 3), (0, 1)):
            scan(truncated.build_truncated_conditional(cfg, tc, h), h % 2)
        for A in (0.0, 0.5, 1.0):
            for n in HERALDS:
                scan(psi.build_psi_conditional(psi.PsiSchemeConfig(A0, A1, beta, t, A), n), (n + 1) % 2)
        bcfg = two_photon.SchemeBConfig(A0, A1, beta, t, **AUX)
        for n, k in itertools.product(HERALDS, range(3)):
            scan(two_photon.build_exact_conditional(bcfg, n, k), n % 2)
    report(5, worst <= 1e-10, f"max wrong-parity mass {worst:.1e}")


def test_criterion_06_two_photon_approximation():
    worst, where = 1.0, None
    for beta, t in itertools.product(BETAS, TS):
        for beta1, r1 in itertools.product((0.25, 0.5, 0.75, 1.0), (0.01, 0.02, 0.03, 0.04, 0.05)):
            cfg = two_photon.SchemeBConfig.balanced(beta, t, beta1, math.sqrt(1 - r1 * r1))
            for n, k in itertools.product(range(3), range(3)):
                f = two_photon.approximation_fidelity(cfg, n, k)
                if f < worst:
                    worst, where = f, (beta, t, beta1, r1, n, k)
    report(6, worst >= 0.99, f"min fidelity {worst:.4f} at (beta, t, beta1, r1, n, k) = {where}")


def test_criterion_07_fidelity_formula_audit():
    rep = verify.run_all(only="truncated.fidelity_formula")
    silent = [c.name for c in rep.checks if c.status == verify.FAIL]
    documented = [c for c in rep.checks if c.status == verify.DOCUMENTED]
    both = all(math.isfinite(c.measured) and math.isfinite(c.expected) for c in documented)
    # the same audit directly on the stated range
    direct_gap = 0.0
    for beta, t in itertools.product(np.linspace(0.1, 1.5, 15), TS):
        cfg = single_photon.SchemeConfig.balanced(float(beta), t)
        for tc, h in itertools.product((2, 3), (0, 1)):
            _, d = truncated.fidelity_to_genuine(cfg, tc, h)
            direct_gap = max(direct_gap, abs(truncated.fidelity_formula(cfg, tc, h, "corrected") - d))
    ok = not silent and both and len(rep.checks) == 4
    report(7, ok, f"{len(rep.checks) - len(documented)} formulas agree, "
                  f"{len(documented)} documented ({', '.join(c.name.split('.', 2)[2] for c in documented)}); "
                  f"corrected max gap {direct_gap:.1e}")


def test_criterion_08_psi_arbitration():
    rep = verify.run_all(only="psi.arbitration")
    adopted = [c.name.rsplit(".", 1)[1] for c in rep.checks if c.status == verify.PASS]
    worst = {}
    for reading in psi.READINGS:
        w = 0.0
        for A, n in itertools.product((0.0, 0.5, 1.0), range(4)):
            cfg = psi.PsiSchemeConfig.balanced(0.8, 0.5, A)
            rec = oracle.single_photon_outcome(oracle.input_state("psi_2m", 0.8, A=A), cfg.a0, cfg.a1, 0.5, n)
            w = max(w, 1 - entanglement.fidelity(psi.build_psi_conditional(cfg, n, reading=reading),
                                                 oracle.single_photon_joint(rec)))
        worst[reading] = w
    ok = any(w <= 1e-8 for w in worst.values()) and bool(adopted)
    report(8, ok, f"adopted reading {adopted}; max infidelity "
                  + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


def test_criterion_09_qualitative_claims():
    p0 = single_photon.success_probability(single_photon.SchemeConfig.balanced(0.05, 0.05), 0)
    ditch_fail = []
    for n in (1, 2, 3, 4):
        vals = [search.evaluate("fig1a", "negativity", {"beta": b, "t": 0.5}, n) for b in (0.1, 0.01, 0.001)]
        if not (all(a > b for a, b in zip(vals, vals[1:])) and vals[-1] < 1e-3):
            ditch_fail.append(f"{n}->{vals[-1]:.3f}")
    at_zero = search.evaluate("fig1a", "negativity", {"beta": 0.0, "t": 0.5}, 1, "oracle")
    n0 = min(search.evaluate("fig1a", "negativity", {"beta": b, "t": 0.5}, 0) for b in (0.1, 0.01, 0.001))
    n0_zero = search.evaluate("fig1a", "negativity", {"beta": 0.0, "t": 0.5}, 0, "oracle")
    p1k, where = 0.0, None
    for beta, t in itertools.product(np.linspace(0.05, 2.5, 50), np.linspace(0.02, 0.98, 50)):
        cfg = two_photon.SchemeBConfig.balanced(float(beta), float(t), **AUX)
        for k in (0, 1):
            p = two_photon.success_probability_b(cfg, 1, k)
            if p > p1k:
                p1k, where = p, (round(float(beta), 3), round(float(t), 3), k)
    parts = [p0 > 0.9, not ditch_fail and at_zero < 1e-12 and n0 > 0 and n0_zero > 0, p1k <= 0.12]
    ditch = "ok" if parts[1] else f"no zero limit for heralds [{', '.join(ditch_fail)}]"
    report(9, all(parts), f"P0 {p0:.4f}; ditch {ditch} (N1 at beta=0: {at_zero:.1e}, N0: {n0_zero:.3f}); "
                          f"max P1k {p1k:.4f} at (beta, t, k) = {where}")


def test_criterion_10_performance():
    t0 = time.perf_counter()
    axes = [search.parse_axis("beta:0.05:2.5:100"), search.parse_axis("t:0.02:0.98:100")]
    for q in ("probability", "negativity"):
        search.sweep("fig1a", (0,), q, axes, {}, cutoff=40)
    sweep_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    verify.run_all()
    verify_s = time.perf_counter() - t0
    report(10, sweep_s < 60 and verify_s < 600, f"100x100 sweep {sweep_s:.2f} s, verify {verify_s:.1f} s")
