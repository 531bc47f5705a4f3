import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dvcv import search
from dvcv.errors import InvalidConfig, NoSignChange


def query(free, bracket, fixed, herald=(0,), condition="sqrt_ratio"):
    return search.MaxEntanglementQuery("fig1a", herald, fixed, free, bracket, condition)


def test_beta_root_for_even_herald():
    roots = search.solve_max_entanglement(query("beta", (1.5, 2.2), {"t": 0.3}))
    assert [round(r.value, 5) for r in roots] == [1.88492]
    assert abs(roots[0].residual) < 1e-12


def test_beta_root_for_odd_herald():
    roots = search.solve_max_entanglement(query("beta", (1.0, 1.5), {"t": 0.8}, (1,)))
    assert any(abs(r.value - 1.26429) < 1e-5 for r in roots)


@pytest.mark.parametrize("condition,expected", [("sqrt_ratio", 0.4796), ("exact", 0.4898)])
def test_amplitude_root(condition, expected):
    roots = search.solve_max_entanglement(query("a0_squared", (0.01, 0.99), {"beta": 0.1, "t": 0.2},
                                                condition=condition))
    assert roots[0].value == pytest.approx(expected, abs=1e-4)


def test_exact_condition_gives_unit_negativity():
    for r in search.solve_max_entanglement(query("a0_squared", (0.01, 0.99), {"beta": 0.1, "t": 0.2},
                                                 condition="exact")):
        assert r.negativity == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.1, 0.9))
def test_roots_zero_the_residual(p, t):
    try:
        roots = search.solve_max_entanglement(search.MaxEntanglementQuery(
            "fig1a", (0,), {"t": t, "a0_squared": p}, "beta", (0.05, 3.0), "exact"))
    except NoSignChange:
        return
    for r in roots:
        assert abs(r.residual) < 1e-9
        assert r.negativity == pytest.approx(1.0, abs=1e-8)


def test_no_sign_change():
    with pytest.raises(NoSignChange):
        search.solve_max_entanglement(query("beta", (0.01, 0.02), {"t": 0.3}))


def test_bad_query():
    with pytest.raises(InvalidConfig):
        search.solve_max_entanglement(query("gamma", (0.1, 1.0), {"t": 0.3}))


def test_parse_axis():
    name, values = search.parse_axis("beta:0:1:5")
    assert name == "beta"
    assert np.allclose(values, [0, 0.25, 0.5, 0.75, 1])
    for bad in ("beta:0:1", "beta:0:1:x", "beta:0:1:0", "gamma:0:1:3"):
        with pytest.raises(InvalidConfig):
            search.parse_axis(bad)


def test_sweep_matches_pointwise_evaluation():
    axes = [search.parse_axis("beta:0.2:2:7"), search.parse_axis("t:0.1:0.9:5")]
    grid = search.sweep("fig1a", (0,), "probability", axes, {})
    for (b, t, v) in grid.rows():
        assert v == search.evaluate("fig1a", "probability", {"beta": b, "t": t}, (0,))


def test_sweep_output_is_deterministic():
    axes = [search.parse_axis("beta:0.05:2.5:30"), search.parse_axis("t:0.02:0.98:30")]
    a = search.sweep("fig1a", (0,), "negativity", axes, {}).to_csv()
    b = search.sweep("fig1a", (0,), "negativity", axes, {}).to_csv()
    assert a == b
    assert a.splitlines()[0] == "axis1,axis2,value"
    assert len(a.splitlines()) == 901


def test_degenerate_cells_are_flagged():
    axes = [search.parse_axis("beta:0:1:3"), search.parse_axis("t:0.2:0.8:2")]
    grid = search.sweep("fig1a", (0,), "probability", axes, {})
    assert grid.flags and all(i == 0 for i, _, _ in grid.flags)
    assert math.isnan(grid.cells[0][0])
    assert json.loads(grid.to_json())


def test_engines_agree_on_sweep_cells():
    for b, t in ((0.3, 0.2), (1.1, 0.6), (2.0, 0.8)):
        p = {"beta": b, "t": t}
        for q in ("probability", "negativity"):
            a = search.evaluate("fig1a", q, p, (1,))
            o = search.evaluate("fig1a", q, p, (1,), "oracle")
            assert a == pytest.approx(o, abs=1e-8)
