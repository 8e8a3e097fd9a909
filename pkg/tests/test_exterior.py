from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2forge.catalog import catalog_get, default_catalog
from g2forge.exterior import (
    FormError,
    KForm,
    ce_diff,
    contract,
    generic_form,
    parse_form,
    render_form,
    wedge,
)
from g2forge.lie import abelian, parse_structure_equations

SL2 = parse_structure_equations("(-e23,-2e12,2e13)")


def e(*idx, dim=7, c=1):
    return KForm.basis(dim, idx, Fraction(c))


def unit(i, dim=7):
    return [int(j == i) for j in range(1, dim + 1)]


def test_wedge_examples():
    assert wedge(e(1), e(2)) == e(1, 2)
    assert not wedge(e(1, 2), e(1, 3))
    assert wedge(e(2, 3), e(1)) == e(1, 2, 3)
    assert wedge(e(2), e(1)) == e(1, 2, c=-1)
    assert not wedge(e(1, 2, 3, 4), e(5, 6, 7, 1))
    with pytest.raises(FormError):
        wedge(e(1, dim=6), e(2))


def test_basis_sign_normalization():
    assert KForm.basis(7, (2, 1)) == e(1, 2, c=-1)
    assert not KForm.basis(7, (1, 1))


def test_contract_examples():
    assert contract(unit(1), e(1, 2, 3)) == e(2, 3)
    assert contract(unit(2), e(1, 2, 3)) == e(1, 3, c=-1)
    phi = parse_form("e123+e145+e246", 7)
    assert not contract(unit(7), phi)
    with pytest.raises(FormError):
        contract(unit(1), KForm.zero(7, 0))


def test_ce_diff_examples():
    assert ce_diff(SL2, e(1, dim=3)) == e(2, 3, dim=3, c=-1)
    assert not ce_diff(SL2, e(2, 3, dim=3))
    phi = generic_form(7, 3)
    assert not ce_diff(abelian(7), phi)


def test_generic_form_counts():
    assert len(generic_form(7, 3).variables) == 35
    assert len(generic_form(6, 2).variables) == 15
    assert generic_form(7, 7).variables == ("p1234567",)
    assert "p123" in generic_form(7, 3).variables


def test_parse_render_round_trip():
    text = "-e147+2*e236+1/2*e345"
    phi = parse_form(text, 7)
    assert parse_form(render_form(phi), 7) == phi
    assert phi[(1, 4, 7)] == -1 and phi[(3, 4, 5)] == Fraction(1, 2)


def _algebras():
    for name, entry, v in default_catalog().members():
        yield name, entry.instantiate(v) if v else entry.algebra()


@pytest.mark.parametrize("name,g", list(_algebras()), ids=lambda x: x if isinstance(x, str) else "")
def test_dd_zero_on_generic_forms(name, g):
    for k in (1, 2, 3):
        if k <= g.dim:
            assert not ce_diff(g, ce_diff(g, generic_form(g, k))), (name, k)


# -- random forms ----------------------------------------------------------------------

coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def forms(draw, degree=None, dim=7):
    k = draw(st.integers(0, dim)) if degree is None else degree
    idx = list(combinations(range(1, dim + 1), k))
    picked = draw(st.lists(st.sampled_from(idx), max_size=5, unique=True)) if idx else []
    return KForm.from_terms(dim, k, {i: draw(coef) for i in picked})


vectors = st.lists(coef, min_size=7, max_size=7)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_wedge_associative(data):
    a = data.draw(forms(data.draw(st.integers(0, 3))))
    b = data.draw(forms(data.draw(st.integers(0, 7 - a.degree))))
    c = data.draw(forms(data.draw(st.integers(0, 7 - a.degree - b.degree))))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_graded_commutative(data):
    a = data.draw(forms(data.draw(st.integers(0, 4))))
    b = data.draw(forms(data.draw(st.integers(0, 7 - a.degree))))
    assert wedge(a, b) == wedge(b, a) * (-1) ** (a.degree * b.degree)


@settings(max_examples=100, deadline=None)
@given(st.data(), vectors)
def test_contract_properties(data, v):
    a = data.draw(forms(data.draw(st.integers(1, 4))))
    b = data.draw(forms(data.draw(st.integers(0, 7 - a.degree))))
    if a.degree >= 2:
        assert not contract(v, contract(v, a))
    lhs = contract(v, wedge(a, b))
    rhs = wedge(contract(v, a), b)
    if b.degree:
        rhs = rhs + wedge(a, contract(v, b)) * (-1) ** a.degree
    assert lhs == rhs


@pytest.mark.parametrize("k", [1, 2, 3])
def test_contract_basis_pairing(k):
    for idx in combinations(range(1, 8), k):
        for i in range(1, 8):
            assert bool(contract(unit(i), e(*idx))) == (i in idx)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_leibniz_rule(data):
    g = catalog_get("L7_2")
    a = data.draw(forms(data.draw(st.integers(0, 3))))
    b = data.draw(forms(data.draw(st.integers(0, 3))))
    lhs = ce_diff(g, wedge(a, b))
    rhs = wedge(ce_diff(g, a), b) + wedge(a, ce_diff(g, b)) * (-1) ** a.degree
    assert lhs == rhs
