"""Closed-form heralded states against the Fock-space simulation."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dvcv import entanglement
from dvcv.errors import DegenerateState, InvalidConfig
from dvcv.schemes import single_photon, two_photon, oracle, psi, truncated

betas = st.floats(0.1, 2.0)
ts = st.floats(0.05, 0.95)
phases = st.floats(0, 2 * math.pi)
a0sq = st.floats(0.05, 0.95)


def amplitudes(p, phi):
    return math.sqrt(p), math.sqrt(1 - p) * complex(math.cos(phi), math.sin(phi))


@settings(max_examples=40, deadline=None)
@given(betas, ts, st.integers(0, 4), a0sq, phases, st.sampled_from(["even", "odd"]))
def test_single_photon_state_and_probability_match_simulation(beta, t, n, p, phi, parity):
    a0, a1 = amplitudes(p, phi)
    cfg = single_photon.SchemeConfig(a0, a1, beta, t, parity)
    kind = "scs_even" if parity == "even" else "scs_odd"
    rec = oracle.single_photon_outcome(oracle.input_state(kind, beta), a0, a1, t, n)
    if rec.probability < 1e-12:
        return
    state = single_photon.build_conditional_state(cfg, n)
    assert entanglement.fidelity(state, oracle.single_photon_joint(rec)) >= 1 - 1e-9
    assert single_photon.success_probability(cfg, n) == pytest.approx(rec.probability, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(betas, ts, a0sq)
def test_single_photon_probabilities_sum_to_one(beta, t, p):
    cfg = single_photon.SchemeConfig.from_a0_squared(p, beta, t)
    total = sum(single_photon.success_probability(cfg, n) for n in range(oracle.cutoff_for(beta) + 2))
    assert total == pytest.approx(1.0, abs=1e-8)


@settings(max_examples=30, deadline=None)
@given(betas, ts, st.integers(0, 4))
def test_single_photon_negativity_formula_matches_partial_transpose(beta, t, n):
    cfg = single_photon.SchemeConfig(0.6, 0.8j, beta, t)
    num = entanglement.negativity_numeric(entanglement.hybrid_density(single_photon.build_conditional_state(cfg, n)))
    assert single_photon.negativity(cfg, n) == pytest.approx(num, abs=1e-7)


def test_single_photon_config_validation():
    with pytest.raises(InvalidConfig):
        single_photon.SchemeConfig(0.6, 0.6, 1.0, 0.5)
    with pytest.raises(InvalidConfig):
        single_photon.SchemeConfig.balanced(1.0, 1.2)
    with pytest.raises(DegenerateState):
        single_photon.build_conditional_state(single_photon.SchemeConfig.balanced(0.0, 0.5), 0)


@pytest.mark.slow
@pytest.mark.parametrize("beta,t", [(0.5, 0.4), (1.2, 0.7)])
def test_two_photon_exact_state_matches_simulation(beta, t):
    cfg = two_photon.SchemeBConfig(0.6, 0.8, beta, t, 1.0, 0.95)
    out = oracle.two_photon_output(oracle.input_state("scs_even", beta), 0.6, 0.8, t, 1.0, 0.95)
    for n, k in itertools.product(range(3), range(3)):
        rec = oracle.two_photon_outcome(out, n, k)
        f = entanglement.fidelity(two_photon.build_exact_conditional(cfg, n, k), oracle.two_photon_joint(rec))
        assert f >= 1 - 1e-8
        assert two_photon.success_probability_b(cfg, n, k) == pytest.approx(rec.probability, abs=1e-9)


def test_two_photon_approximation_improves_as_r1_shrinks():
    f = [two_photon.approximation_fidelity(two_photon.SchemeBConfig.balanced(0.8, 0.5, 1.0, math.sqrt(1 - r * r)), 1, 1)
         for r in (0.2, 0.1, 0.05, 0.01)]
    assert all(b >= a - 1e-12 for a, b in zip(f, f[1:]))


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 1.5), ts, st.sampled_from([2, 3]), st.sampled_from([0, 1]))
def test_truncated_states_match_simulation(beta, t, tc, h):
    cfg = single_photon.SchemeConfig(0.6, 0.8, beta, t)
    rec = oracle.single_photon_outcome(oracle.input_state("truncated_scs", beta, n_terms=tc), 0.6, 0.8, t, h)
    s = truncated.build_truncated_conditional(cfg, tc, h)
    assert entanglement.fidelity(s, oracle.single_photon_joint(rec)) >= 1 - 1e-9
    assert s.probability == pytest.approx(rec.probability, abs=1e-10)
    assert abs(s.B) == pytest.approx(truncated.entangling_B(cfg, tc, h), rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 1.5), ts, st.sampled_from([2, 3]), st.sampled_from([0, 1]))
def test_truncated_fidelity_formula_matches_inner_product(beta, t, tc, h):
    cfg = single_photon.SchemeConfig.balanced(beta, t)
    _, direct = truncated.fidelity_to_genuine(cfg, tc, h)
    assert truncated.fidelity_formula(cfg, tc, h, "corrected") == pytest.approx(direct, abs=1e-9)


def test_three_terms_beat_two():
    for beta, t, h in itertools.product((0.3, 0.9, 1.4), (0.2, 0.5, 0.8), (0, 1)):
        cfg = single_photon.SchemeConfig.balanced(beta, t)
        assert truncated.fidelity_to_genuine(cfg, 3, h)[1] >= truncated.fidelity_to_genuine(cfg, 2, h)[1] - 1e-12


complex_A = st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.2, 1.5), ts, complex_A, st.integers(0, 3))
def test_psi_states_match_simulation(beta, t, A, n):
    cfg = psi.PsiSchemeConfig(0.6, 0.8, beta, t, A)
    rec = oracle.single_photon_outcome(oracle.input_state("psi_2m", beta, A=A), 0.6, 0.8, t, n)
    if rec.probability < 1e-12:
        return
    f = entanglement.fidelity(psi.build_psi_conditional(cfg, n), oracle.single_photon_joint(rec))
    assert f >= 1 - 1e-8
    assert psi.psi_success_probability(cfg, n) == pytest.approx(rec.probability, abs=1e-10)


def test_psi_without_extra_photon_is_the_odd_cat_scheme():
    cfg = psi.PsiSchemeConfig.balanced(0.8, 0.5, 0.0)
    for n in range(4):
        f = entanglement.fidelity(psi.build_psi_conditional(cfg, n), single_photon.build_conditional_state(cfg.as_cat_config(), n))
        assert f == pytest.approx(1.0, abs=1e-12)


def test_psi_coefficients_recovered_from_state():
    cfg = psi.PsiSchemeConfig.balanced(0.8, 0.5, 0.5)
    for n in range(4):
        br = psi.psi_branches(cfg, n)
        s = psi.build_psi_conditional(cfg, n)
        photon, vac = psi.relative_coefficients(cfg, n)
        got_p = psi.extract_coefficients(s.branch("photon").cv, br.photon_kinds, br.x)
        got_v = psi.extract_coefficients(s.branch("vacuum").cv, br.vacuum_kinds, br.x)
        assert np.allclose(got_p, photon, atol=1e-9)
        assert np.allclose(got_v, vac, atol=1e-9)
