from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2forge.catalog import catalog_get
from g2forge.exactmath.poly import Polynomial
from g2forge.exterior import KForm, ce_diff, generic_form, parse_form, power, wedge
from g2forge.g2core import (
    STANDARD_PHI,
    STANDARD_PSI,
    G2Error,
    b_matrix,
    b_matrix_direct,
    b_matrix_numeric,
    central_contraction,
    hodge_star_numeric,
    is_coclosed_numeric,
    is_g2,
    is_stable,
    metric_numeric,
    symplectic_check,
)
from g2forge.lie import LieAlgebraError, abelian, direct_sum
from g2forge.obstruction import closed_space
from g2forge.reproduce import verify_example

PHI0 = parse_form(STANDARD_PHI, 7)
I7 = [[int(i == j) for j in range(7)] for i in range(7)]


def _perm_sign(p):
    s, p = 1, list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def _tensor(phi):
    T = np.zeros((7, 7, 7), dtype=object)
    T[:] = Fraction(0)
    for (a, b, c), v in phi.coeffs.items():
        for p in permutations(range(3)):
            idx = [(a, b, c)[k] - 1 for k in p]
            T[idx[0], idx[1], idx[2]] = _perm_sign(p) * Fraction(v)
    return T


def oracle_b(phi):
    """Brute force over S_7 with the fully antisymmetric coefficient tensor."""
    T = _tensor(phi)
    perms = [(p, _perm_sign(p)) for p in permutations(range(7))]
    B = [[Fraction(0)] * 7 for _ in range(7)]
    for i in range(7):
        for j in range(i, 7):
            s = Fraction(0)
            for p, sg in perms:
                x = T[i, p[0], p[1]]
                if not x:
                    continue
                y = T[j, p[2], p[3]]
                if y:
                    s += sg * x * y * T[p[4], p[5], p[6]]
            B[i][j] = B[j][i] = s / (6 * 24)
    return B


def test_flat_form_identity():
    B = b_matrix(None, PHI0)
    assert B.rows() == I7
    assert oracle_b(PHI0) == I7
    assert b_matrix_direct(PHI0) == I7
    v = is_g2(PHI0, abelian(7))
    assert v.closed and v.stable and v.definite_sign == 1 and v.det_b == 1
    assert np.allclose(v.metric_numeric, np.eye(7))


def test_oracle_on_random_form():
    rng = np.random.default_rng(3)
    phi = KForm.from_terms(7, 3, {t: Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3)))
                                  for t in combinations(range(1, 8), 3) if rng.random() < 0.5})
    assert b_matrix(None, phi).rows() == oracle_b(phi)


def test_negative_flat_form():
    v = is_g2(-PHI0, abelian(7))
    assert v.definite_sign == -1
    assert b_matrix(None, -PHI0).rows() == [[-x for x in r] for r in I7]


def test_stability_examples():
    assert is_stable(PHI0)
    assert not is_stable(parse_form("e123", 7))
    with pytest.raises(G2Error):
        b_matrix(None, parse_form("e12", 7))


def test_hodge_star_flat():
    star = hodge_star_numeric(PHI0, PHI0)
    psi = parse_form(STANDARD_PSI, 7)
    assert set(star.coeffs) == set(psi.coeffs)
    for k, c in psi.coeffs.items():
        assert abs(star.coeffs[k] - float(c)) < 1e-9
    # ** = identity on 3-forms in dimension 7
    back = hodge_star_numeric(PHI0, star)
    for k, c in PHI0.coeffs.items():
        assert abs(back.coeffs[k] - float(c)) < 1e-9
    one = hodge_star_numeric(PHI0, KForm.basis(7, ()))
    assert abs(one[(1, 2, 3, 4, 5, 6, 7)] - 1.0) < 1e-12
    assert is_coclosed_numeric(abelian(7), PHI0)


def test_hodge_rejects_indefinite():
    with pytest.raises(G2Error):
        hodge_star_numeric(parse_form("e123+e145+e167+e246-e257-e347+e356", 7), PHI0)


def test_printed_examples():
    v, matches, coclosed = verify_example("MT1", {})
    assert matches and v.closed and v.definite_sign == 1 and not coclosed
    v, matches, coclosed = verify_example("MT4", {})
    assert matches and v.closed and v.is_g2 and not coclosed
    v, matches, _ = verify_example("MT2", {"mu": Fraction(-3, 4)})
    assert matches and v.stable


def test_sqrt2_example():
    for mu in (Fraction(1, 2), 1, 2):
        v, matches, _ = verify_example("MT3", {"mu": Fraction(mu)})
        assert matches and v.closed and v.definite_sign == 1


def test_symplectic_examples():
    R6 = abelian(6)
    assert symplectic_check(R6, parse_form("e12+e34+e56", 6))
    assert not symplectic_check(R6, parse_form("e12+e13", 6))
    with pytest.raises(G2Error):
        symplectic_check(abelian(5), parse_form("e12", 5))
    s = catalog_get("sl2 ⊕ sl2")
    Z = closed_space(s, 2)
    assert not power(Z.generic, 3)


def test_central_contraction_examples():
    h, omega = central_contraction(abelian(7), parse_form("e127+e347+e567+e135", 7), [0] * 6 + [1])
    assert omega == parse_form("e12+e34+e56", 6) and symplectic_check(h, omega)
    h, omega = central_contraction(abelian(7), parse_form("e123+e456", 7), [0] * 6 + [1])
    assert not omega and not symplectic_check(h, omega)
    g = direct_sum(catalog_get("sl2 ⊕ so3"), abelian(1))
    Z = closed_space(g, 3)
    h, omega = central_contraction(g, Z.generic, [0] * 6 + [1])
    assert not ce_diff(h, omega) and not power(omega, 3)
    with pytest.raises(LieAlgebraError):
        central_contraction(catalog_get("so3 ⊕ R4"), parse_form("e567", 7), [1] + [0] * 6)
    with pytest.raises(G2Error):
        central_contraction(catalog_get("sl2 ⊕ R4"), parse_form("e1", 7).wedge(parse_form("e45", 7)), [0] * 6 + [1])


def test_generic_b_is_cubic_and_symmetric():
    B = b_matrix(None, generic_form(7, 3))
    for i in range(7):
        for j in range(7):
            x = B[i, j]
            assert x == B[j, i]
            if isinstance(x, Polynomial) and x:
                assert x.degree() == 3


# -- properties ------------------------------------------------------------------------

coef = st.fractions(min_value=-3, max_value=3, max_denominator=2)
lam = st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(bool)


def _phi_from(vals):
    return KForm.from_terms(7, 3, {t: c for t, c in zip(combinations(range(1, 8), 3), vals)})


forms = st.lists(coef, min_size=35, max_size=35).map(_phi_from)


@settings(max_examples=50, deadline=None)
@given(forms, lam)
def test_cubic_homogeneity(phi, l):
    B = b_matrix(None, phi).rows()
    assert b_matrix(None, phi * l).rows() == [[l**3 * x for x in r] for r in B]


def _definite_near_flat(data):
    pert = data.draw(st.lists(st.fractions(min_value=Fraction(-1, 20), max_value=Fraction(1, 20), max_denominator=40),
                              min_size=35, max_size=35))
    return PHI0 + _phi_from(pert)


@settings(max_examples=50, deadline=None)
@given(st.data(), st.fractions(min_value=Fraction(1, 7), max_value=10, max_denominator=7))
def test_metric_scaling(data, l):
    phi = _definite_near_flat(data)
    v1, v2 = is_g2(phi), is_g2(phi * l)
    assert v1.definite_sign == 1 and v2.definite_sign == 1
    assert np.allclose(v2.metric_numeric, float(l) ** (2 / 3) * v1.metric_numeric, rtol=1e-8, atol=1e-8)
    assert is_g2(phi * -l).definite_sign == -1


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_metric_det_and_orientation(data):
    phi = _definite_near_flat(data)
    v = is_g2(phi)
    G = v.metric_numeric
    assert np.allclose(G, G.T) and np.linalg.eigvalsh(G)[0] > 0
    assert abs(np.linalg.det(G) - abs(float(v.det_b)) ** (2 / 9)) < 1e-6
    B = b_matrix(None, phi)
    Bf = B.flip()
    assert Bf.rows() == [[-x for x in r] for r in B.rows()]
    assert b_matrix(None, phi, orientation=-1).rows() == Bf.rows()
    G2, vol = metric_numeric(phi)
    assert np.allclose(G2, G) and vol > 0


@settings(max_examples=30, deadline=None)
@given(forms, st.lists(coef, min_size=7, max_size=7), st.lists(coef, min_size=7, max_size=7))
def test_polarization(phi, v, w):
    B = b_matrix(None, phi).rows()

    def b(x, y):
        return sum(x[i] * B[i][j] * y[j] for i in range(7) for j in range(7))

    s = [a + c for a, c in zip(v, w)]
    assert b(v, w) == (b(s, s) - b(v, v) - b(w, w)) / 2
    num = b_matrix_numeric([float(phi[t]) for t in combinations(range(1, 8), 3)])
    assert np.allclose(num, np.array(B, dtype=float))


@settings(max_examples=20, deadline=None)
@given(st.data(), st.lists(coef, min_size=35, max_size=35))
def test_hodge_inner_product_positive(data, vals):
    phi = _definite_near_flat(data)
    alpha = _phi_from(vals)
    top = wedge(alpha.to_float(), hodge_star_numeric(phi, alpha))
    assert top[(1, 2, 3, 4, 5, 6, 7)] >= -1e-9
