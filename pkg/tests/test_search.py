from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2forge.catalog import catalog_get
from g2forge.exterior import KForm, ce_diff
from g2forge.lie import abelian
from g2forge.obstruction import closed_space, obstruct
from g2forge.reproduce import printed_form
from g2forge.search import (
    SearchConfig,
    _run_restart,
    basis_matrix,
    certify,
    objective,
    rationalize,
    search_g2,
)


def test_config_validation():
    assert SearchConfig().restarts == 50 and SearchConfig().budget == 2000 and SearchConfig().max_den == 48
    for bad in ({"restarts": 0}, {"budget": -1}, {"max_den": 0}, {"epsilon": 0.0}):
        with pytest.raises(ValueError):
            SearchConfig(**bad)


def test_rationalize_examples():
    from g2forge.lie import parse_structure_equations

    g = parse_structure_equations("(0,0,0)")
    space = closed_space(g, 2)
    phi = rationalize([0.5, 1 / 3, 0.0], space, 4)
    assert sorted(phi.coeffs.values()) == [Fraction(1, 3), Fraction(1, 2)]
    space7 = closed_space(abelian(7), 3)
    assert not rationalize([0.0] * 35, space7, 48)


def _coords(space, phi):
    return [float(phi[tuple(int(c) for c in v[1:])]) for v in space.free_vars]


def test_rationalize_near_printed_optimum():
    g = catalog_get("MT4")
    space = closed_space(g, 3)
    t = np.array(_coords(space, printed_form("MT4", {})))
    t = t + np.random.default_rng(0).normal(scale=1e-4, size=t.size)
    phi = rationalize(t, space, 48)
    assert not ce_diff(g, phi)
    assert certify(phi, g).definite_sign == 1


def test_certify_examples():
    assert not certify(KForm.zero(7, 3), abelian(7)).stable
    for name in ("MT1", "MT4"):
        v = certify(printed_form(name, {}), catalog_get(name))
        assert v.closed and v.definite_sign == 1


def test_rounding_can_lose_definiteness():
    g = catalog_get("sl2 ⊕ r4_-1/2")
    space = closed_space(g, 3)
    cfg = SearchConfig(seed=1)
    found = search_g2(g, cfg, space)
    t, best, _ = _run_restart(basis_matrix(space), cfg, found.provenance["restart"])
    assert best > cfg.epsilon
    v = certify(rationalize(t, space, 1), g)
    assert v.stable and v.definite_sign is None
    assert certify(rationalize(t, space, 2), g).is_g2


def test_search_continues_after_bad_rounding():
    g = catalog_get("sl2 ⊕ r4_-1/2")
    found = search_g2(g, SearchConfig(seed=1, max_den=1))
    assert found is not None
    winner = found.provenance["restarts"][-1]
    assert winner["rounding"][0] == {"maxDen": 1, "definite": False}
    assert winner["rounding"][-1]["definite"] and found.provenance["maxDen"] > 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=35, max_size=35).filter(lambda v: np.linalg.norm(v) > 1e-3),
       st.floats(0.01, 100))
def test_objective_scale_invariant(t, lam):
    M = basis_matrix(closed_space(abelian(7), 3))
    t = np.array(t)
    a, b = objective(t, M), objective(lam * t, M)
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


def test_objective_zero_vector():
    M = basis_matrix(closed_space(abelian(7), 3))
    assert objective(np.zeros(35), M) == -np.inf


def _assert_certified(found, g):
    assert found is not None
    v = found.verdict
    assert v.closed and v.stable and v.definite_sign is not None
    assert not ce_diff(g, found.form)
    assert all(isinstance(c, Fraction) for c in found.form.coeffs.values())
    assert certify(found.form, g).definite_sign == v.definite_sign


def test_search_r7_and_existence():
    for name in ("R7", "sl2 ⊕ r4_-1/2"):
        g = catalog_get(name)
        _assert_certified(search_g2(g, SearchConfig(seed=1)), g)


def test_search_absent_on_obstructed():
    g = catalog_get("so3 ⊕ d4")
    assert search_g2(g, SearchConfig(seed=1, restarts=10)) is None
    assert obstruct(g) is not None


def test_search_deterministic(monkeypatch):
    g = catalog_get("sl2 ⊕ r4p_1")
    cfg = SearchConfig(seed=7, restarts=6)
    a = search_g2(g, cfg)
    monkeypatch.setenv("G2FORGE_THREADS", "3")
    b = search_g2(g, cfg)
    assert a is not None and b is not None
    assert a.form == b.form
    assert json.dumps(a.to_json()) == json.dumps(b.to_json())


def test_search_rejects_symbolic():
    with pytest.raises(ValueError):
        search_g2(catalog_get("sl2 ⊕ r4u_mu"))
