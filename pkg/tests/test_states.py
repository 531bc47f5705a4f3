import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dvcv import fock, states
from dvcv.errors import DegenerateState, OutOfRange
from dvcv.schemes import oracle

xs = st.floats(0.05, 2.5)
kinds = st.sampled_from(states.NORMALIZATION_KINDS)


def engine_superposition(kind, x):
    """|n,-x> + s|n,x> built with the Fock engine."""
    n, s = states._SIGNS[kind]
    c = fock.cutoff_for(x) + 4
    return fock.displaced_number(c, n, -x) + fock.displaced_number(c, n, x).scaled(s)


@settings(max_examples=60, deadline=None)
@given(kinds, xs)
def test_normalizations_match_engine_norm(kind, x):
    try:
        nrm = states.normalization(kind, x)
    except DegenerateState:
        return
    assert nrm * engine_superposition(kind, x).norm() == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.complex_numbers(max_magnitude=2.5, allow_nan=False, allow_infinity=False))
def test_displaced_amplitudes_match_engine(n, alpha):
    c = fock.cutoff_for(alpha) + 4
    ref = fock.displaced_number(c, n, alpha).amplitudes
    mine = states.envelope(alpha) * states.displaced_amplitudes(n, alpha, c + 1)
    assert np.allclose(mine, ref, atol=1e-11)


@given(st.integers(0, 2), st.integers(0, 30), st.floats(-2.5, 2.5))
def test_parity_flip_identity(n, m, a):
    assert states.parity_flip_identity_check(n, m, a)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(["ev0", "odd0", "ev1", "odd1", "ev2", "odd2"]), min_size=1, max_size=3, unique=True),
       xs, st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False), min_size=3, max_size=3))
def test_gram_norm_matches_vector_norm(kinds_, x, weights):
    comps = [states.component_terms(k, x) for k in kinds_]
    w = weights[: len(kinds_)]
    terms = ()
    for wi, c in zip(w, comps):
        terms += states.scale_terms(wi, c)
    direct = states.terms_to_vector(terms, fock.cutoff_for(x) + 4).norm()
    assert states.combination_norm(w, comps) == pytest.approx(direct, abs=1e-10)


@pytest.mark.parametrize("kind,parity", [("scs_even", 0), ("sdsps_even", 0), ("sdtps_even", 0),
                                         ("scs_odd", 1), ("sdsps_odd", 1), ("sdtps_odd", 1)])
def test_named_states_have_definite_parity(kind, parity):
    for beta in (0.3, 1.0, 2.0):
        v = states.build_cv_state(kind, beta)
        assert states.parity_mass(v, 1 - parity) < 1e-20
        assert v.norm() == pytest.approx(1.0)


@settings(max_examples=30, deadline=None)
@given(xs, st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_psi_normalization_matches_engine(beta, A):
    v = states.terms_to_vector(states.psi_terms("2m", beta, A), fock.cutoff_for(beta) + 4)
    assert states.psi_normalization("2m", beta, A) * v.norm() == pytest.approx(1.0, abs=1e-10)
    o = oracle.input_state("psi_2m", beta, A=A)
    s = states.build_cv_state("psi_2m", beta, A=A)
    assert abs(np.vdot(o.resized(s.layout.cutoffs).amplitudes, s.amplitudes)) ** 2 == pytest.approx(1.0, abs=1e-10)


def test_cross_overlaps():
    for x in (0.2, 0.9, 1.7):
        c = fock.cutoff_for(x, 1)
        a = states.build_cv_state("scs_odd", x, c)
        b = states.build_cv_state("sdsps_odd", x, c)
        assert np.vdot(a.amplitudes, b.amplitudes).real == pytest.approx(states.overlap_scs_odd_sdsps_odd(x), abs=1e-12)
        a = states.build_cv_state("scs_even", x, c)
        b = states.build_cv_state("sdsps_even", x, c)
        assert np.vdot(a.amplitudes, b.amplitudes).real == pytest.approx(states.overlap_scs_even_sdsps_even(x), abs=1e-12)


def test_small_amplitude_normalization_is_finite():
    # 1 - exp(-2x^2) is evaluated with expm1
    assert states.normalization("odd0", 1e-9) == pytest.approx((4e-18) ** -0.5, rel=1e-6)


def test_degenerate_and_range_errors():
    with pytest.raises(DegenerateState):
        states.normalization("odd0", 0.0)
    with pytest.raises(OutOfRange):
        states.normalization("ev0", -1.0)
    with pytest.raises(OutOfRange):
        states.displaced_amplitudes(3, 1.0, 5)
    with pytest.raises(OutOfRange):
        states.build_cv_state("truncated_scs", 1.0, cutoff=2, n_terms=3)


def test_truncated_cat_support():
    amps = states.truncated_scs_amplitudes(1.2, 3)
    assert np.allclose(amps, [1, 0, 1.44 / math.sqrt(2), 0, 1.2**4 / math.sqrt(24)])
