import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dvcv import entanglement
from dvcv.entanglement import BipartiteDensity
from dvcv.errors import InvalidDensity

finite = st.floats(-1, 1, allow_nan=False)


def test_bell_state_has_unit_negativity():
    rho = BipartiteDensity.from_pure(np.eye(2) / math.sqrt(2))
    assert entanglement.negativity_numeric(rho) == pytest.approx(1.0, abs=1e-12)


def test_product_state_has_zero_negativity():
    rho = BipartiteDensity.from_pure(np.outer([0.6, 0.8j], [1, 0]))
    assert entanglement.negativity_numeric(rho) == pytest.approx(0.0, abs=1e-10)


@settings(max_examples=100)
@given(st.lists(finite, min_size=8, max_size=8))
def test_two_qubit_pure_states(v):
    psi = np.array(v[:4]) + 1j * np.array(v[4:])
    if np.linalg.norm(psi) < 1e-3:
        return
    psi = (psi / np.linalg.norm(psi)).reshape(2, 2)
    # 2 s1 s2 from the Schmidt coefficients equals 2 |det psi|
    expected = 2 * abs(np.linalg.det(psi))
    assert entanglement.negativity_numeric(BipartiteDensity.from_pure(psi)) == pytest.approx(expected, abs=1e-10)


@settings(max_examples=100)
@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), st.floats(0, 1))
def test_closed_form_for_orthogonal_branches(B, p):
    a0, a1 = math.sqrt(p), math.sqrt(1 - p)
    # a0 |e0>|1> + a1 B |e1>|0> with orthonormal e0, e1
    psi = np.array([[0, a0], [a1 * B, 0]])
    if np.linalg.norm(psi) == 0:
        return
    num = entanglement.negativity_numeric(BipartiteDensity.from_pure(psi))
    assert entanglement.negativity_analytic(a0, a1, B) == pytest.approx(num, abs=1e-10)
    assert entanglement.negativity_from_weights(a0, a1 * B) == pytest.approx(num, abs=1e-10)


@given(st.floats(0.01, 0.99))
def test_maximum_at_balanced_branch_weights(p):
    a0, a1 = math.sqrt(p), math.sqrt(1 - p)
    assert entanglement.negativity_analytic(a0, a1, a0 / a1) == pytest.approx(1.0)


@settings(max_examples=50)
@given(st.integers(2, 5), st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_negativity_is_invariant_under_local_unitaries(dA, dB, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=(dA, dB)) + 1j * rng.normal(size=(dA, dB))
    U, _ = np.linalg.qr(rng.normal(size=(dA, dA)) + 1j * rng.normal(size=(dA, dA)))
    V, _ = np.linalg.qr(rng.normal(size=(dB, dB)) + 1j * rng.normal(size=(dB, dB)))
    n1 = entanglement.negativity_numeric(BipartiteDensity.from_pure(psi))
    n2 = entanglement.negativity_numeric(BipartiteDensity.from_pure(U @ psi @ V.T))
    assert n1 == pytest.approx(n2, abs=1e-10)


def test_density_validation():
    with pytest.raises(InvalidDensity):
        BipartiteDensity((2, 2), np.eye(4))
    with pytest.raises(InvalidDensity):
        BipartiteDensity((2, 2), np.triu(np.ones((4, 4))) / 4)
    with pytest.raises(InvalidDensity):
        BipartiteDensity((2, 3), np.eye(4) / 4)


def test_fidelity_pads_cutoffs():
    from dvcv import fock

    a, b = fock.coherent(20, 1.0), fock.coherent(30, 1.0)
    assert entanglement.fidelity(a, b) == pytest.approx(1.0, abs=1e-10)
