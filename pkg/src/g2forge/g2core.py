"""The bilinear map b_phi of a 3-form, stability, induced metric and Hodge star.

Everything is expressed relative to the reference volume e^{1234567}
times an orientation sign.  Exact decisions (stability, definiteness) are
taken on the exact matrix B; the ninth roots needed for the metric and
volume only ever appear in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Mapping, Sequence

import numpy as np

from .exactmath.linalg import definiteness, determinant, is_symmetric
from .exactmath.poly import Polynomial, simplify
from .exterior import KForm, ce_diff, contract, power, sort_with_sign, top_coefficient, wedge
from .lie import LieAlgebra, LieAlgebraError, center, quotient_by_central

DIM = 7
TRIPLES = tuple(combinations(range(1, DIM + 1), 3))
TRIPLE_POS = {t: a for a, t in enumerate(TRIPLES)}


class G2Error(ValueError):
    pass


@lru_cache(maxsize=None)
def b_terms() -> tuple[tuple[tuple[int, int], tuple[tuple[Fraction, int, int, int], ...]], ...]:
    """Index table for B_ij as a cubic form in the 35 coefficients of phi.

    For each i <= j returns terms (coef, A, B, C) with A, B, C positions in
    TRIPLES, so that B_ij = sum coef * phi[A] * phi[B] * phi[C].
    """
    full = tuple(range(1, DIM + 1))
    out = []
    for i in range(1, DIM + 1):
        for j in range(i, DIM + 1):
            acc: dict[tuple[int, int, int], Fraction] = {}
            for a in combinations([x for x in full if x != i], 2):
                sa, A = sort_with_sign((i,) + a)
                rest = [x for x in full if x != j and x not in a]
                for b in combinations(rest, 2):
                    sb, B = sort_with_sign((j,) + b)
                    c = tuple(x for x in full if x not in a and x not in b)
                    sc, _ = sort_with_sign(a + b + c)
                    # iota_i e^{i a} = e^a, so e^A = sa * e^{i a} contributes sa * e^a
                    key = tuple(sorted((TRIPLE_POS[A], TRIPLE_POS[B], TRIPLE_POS[c])))
                    acc[key] = acc.get(key, Fraction(0)) + Fraction(sa * sb * sc, 6)
            terms = tuple((v,) + k for k, v in sorted(acc.items()) if v)
            out.append(((i, j), terms))
    return tuple(out)


@lru_cache(maxsize=None)
def _numeric_tables():
    entries, coefs, A, B, C = [], [], [], [], []
    for (i, j), terms in b_terms():
        for v, a, b, c in terms:
            entries.append((i - 1) * DIM + (j - 1))
            coefs.append(float(v))
            A.append(a)
            B.append(b)
            C.append(c)
    return (np.array(entries), np.array(coefs), np.array(A), np.array(B), np.array(C))


def _coefficient_vector(phi: KForm) -> list:
    if phi.dim != DIM or phi.degree != 3:
        raise G2Error(f"need a 3-form in dimension 7, got degree {phi.degree} in dimension {phi.dim}")
    vec = [Fraction(0)] * len(TRIPLES)
    for idx, c in phi.coeffs.items():
        vec[TRIPLE_POS[idx]] = c
    return vec


@dataclass(frozen=True)
class GramMatrix:
    """b_phi(e_i, e_j) = entries[i][j] * (orientation * e^{1234567})."""

    entries: tuple
    orientation: int = 1
    dim: int = DIM

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise G2Error("orientation must be +1 or -1")
        if not is_symmetric(self.entries):
            raise G2Error("Gram matrix is not symmetric")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def flip(self) -> "GramMatrix":
        return GramMatrix(tuple(tuple(-x for x in r) for r in self.entries), -self.orientation)

    def substitute(self, bindings: Mapping[str, object]) -> "GramMatrix":
        from .exactmath.poly import substitute

        return GramMatrix(
            tuple(tuple(substitute(x, bindings) for x in r) for r in self.entries), self.orientation
        )

    def diagonal(self) -> list:
        return [self.entries[i][i] for i in range(self.dim)]

    def det(self):
        return determinant(self.rows())

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.entries])


def b_matrix(g: LieAlgebra | None, phi: KForm, orientation: int = 1) -> GramMatrix:
    """Exact matrix of b_phi relative to orientation * e^{1234567}."""
    if g is not None and g.dim != DIM:
        raise G2Error("b_phi is only defined on seven-dimensional algebras")
    vec = _coefficient_vector(phi)
    M = [[Fraction(0)] * DIM for _ in range(DIM)]
    for (i, j), terms in b_terms():
        s = Fraction(0)
        for v, a, b, c in terms:
            x, y, z = vec[a], vec[b], vec[c]
            if x and y and z:
                s = s + x * y * z * v
        s = simplify(s)
        if orientation < 0:
            s = -s
        M[i - 1][j - 1] = M[j - 1][i - 1] = s
    return GramMatrix(tuple(tuple(r) for r in M), orientation)


def b_matrix_numeric(phi_vec: Sequence[float]) -> np.ndarray:
    """Float B for a length-35 coefficient vector (lexicographic triples)."""
    entries, coefs, A, B, C = _numeric_tables()
    x = np.asarray(phi_vec, dtype=float)
    flat = np.bincount(entries, weights=coefs * x[A] * x[B] * x[C], minlength=DIM * DIM)
    M = flat.reshape(DIM, DIM)
    return M + np.triu(M, 1).T


def b_matrix_direct(phi: KForm) -> list[list]:
    """Reference implementation by explicit contraction and wedge products."""
    out = [[Fraction(0)] * DIM for _ in range(DIM)]
    inner = [contract(i, phi) for i in range(1, DIM + 1)]
    for i in range(DIM):
        for j in range(i, DIM):
            top = wedge(wedge(inner[i], inner[j]), phi)
            v = simplify(top_coefficient(top) / 6) if top.coeffs else Fraction(0)
            out[i][j] = out[j][i] = v
    return out


def _is_exact_rational(B: GramMatrix) -> bool:
    return all(not isinstance(x, Polynomial) for r in B.entries for x in r)


def is_stable(phi: KForm, g: LieAlgebra | None = None) -> bool:
    B = b_matrix(g, phi)
    if not _is_exact_rational(B):
        raise G2Error("stability needs rational coefficients; substitute parameters first")
    return B.det() != 0


@dataclass
class G2Verdict:
    closed: bool
    stable: bool
    definite_sign: int | None
    det_b: object
    metric_numeric: np.ndarray | None = None
    volume_coeff: float | None = None
    b: GramMatrix | None = field(default=None, repr=False)

    @property
    def is_g2(self) -> bool:
        return self.definite_sign is not None

    @property
    def closed_g2(self) -> bool:
        return self.closed and self.is_g2

    def to_json(self) -> dict:
        return {
            "closed": self.closed,
            "stable": self.stable,
            "definiteSign": self.definite_sign,
            "detB": str(self.det_b),
            "metric": None if self.metric_numeric is None else self.metric_numeric.tolist(),
            "volumeCoeff": self.volume_coeff,
        }


def is_g2(
    phi: KForm,
    g: LieAlgebra | None = None,
    sign: Callable[[object], int] | None = None,
    to_float: Callable[[object], float] = float,
) -> G2Verdict:
    """Decide closedness, stability and definiteness of b_phi exactly.

    ``sign`` and ``to_float`` let callers work over a real extension of Q
    (for instance quadratic surds); by default entries must be rational.
    """
    B = b_matrix(g, phi)
    if sign is None and not _is_exact_rational(B):
        raise G2Error("definiteness needs rational coefficients; substitute parameters first")
    closed = True if g is None else not ce_diff(g, phi)
    kw = {"sign": sign} if sign is not None else {}
    det = B.det()
    det_sign = sign(det) if sign is not None else (det > 0) - (det < 0)
    stable = det_sign != 0
    kind = definiteness(B.rows(), **kw) if stable else "degenerate"
    s = {"positive": 1, "negative": -1}.get(kind)
    metric = vol = None
    if s is not None:
        Bf = np.array([[to_float(x) for x in r] for r in B.entries]) * s
        d = abs(to_float(det))
        metric = d ** (-1.0 / 9.0) * Bf
        vol = s * d ** (1.0 / 9.0)
    return G2Verdict(closed, stable, s, det, metric, vol, B)


def metric_numeric(phi: KForm) -> tuple[np.ndarray, float]:
    """(g_phi, dV coefficient on e^{1234567}) from a float or exact form."""
    Bf = b_matrix_numeric([float(x) for x in _coefficient_vector(phi)])
    ev = np.linalg.eigvalsh(Bf)
    if ev[0] > 0:
        s = 1
    elif ev[-1] < 0:
        s = -1
    else:
        raise G2Error("b_phi is not definite")
    d = abs(float(np.linalg.det(Bf)))
    return d ** (-1.0 / 9.0) * s * Bf, s * d ** (1.0 / 9.0)


def hodge_star_numeric(phi: KForm, alpha: KForm) -> KForm:
    """Hodge star of alpha for the metric and volume induced by phi (floats)."""
    G, vol = metric_numeric(phi)
    Ginv = np.linalg.inv(G)
    k = alpha.degree
    full = tuple(range(1, DIM + 1))
    avec = {idx: float(c) for idx, c in alpha.coeffs.items()}
    out = {}
    for I in combinations(full, k):
        rows = [i - 1 for i in I]
        s = 0.0
        for K, a in avec.items():
            cols = [x - 1 for x in K]
            s += a * (np.linalg.det(Ginv[np.ix_(rows, cols)]) if k else 1.0)
        if s == 0.0:
            continue
        Ic = tuple(x for x in full if x not in I)
        sgn, _ = sort_with_sign(I + Ic)
        out[Ic] = sgn * vol * s
    return KForm._raw(DIM, DIM - k, out)


def is_coclosed_numeric(g: LieAlgebra, phi: KForm, tol: float = 1e-6) -> bool:
    star = hodge_star_numeric(phi, phi)
    dstar = ce_diff(g, star)
    return max((abs(float(c)) for c in dstar.coeffs.values()), default=0.0) < tol


def symplectic_check(g: LieAlgebra, omega: KForm) -> bool:
    """True iff omega is closed and omega^m is not identically zero."""
    if g.dim % 2:
        raise G2Error("symplectic forms need even dimension")
    if omega.degree != 2 or omega.dim != g.dim:
        raise G2Error("omega must be a 2-form on g")
    if ce_diff(g, omega):
        return False
    return bool(power(omega, g.dim // 2))


def central_contraction(g: LieAlgebra, phi: KForm, xi: Sequence) -> tuple[LieAlgebra, KForm]:
    """Quotient h = g/<xi> and the closed 2-form on h induced by iota_xi phi."""
    if ce_diff(g, phi):
        raise G2Error("phi is not closed")
    if not center(g).contains(xi):
        raise LieAlgebraError("xi is not central")
    h, proj = quotient_by_central(g, xi)
    omega = contract(list(xi), phi)
    coeffs = {}
    for a, b in combinations(range(len(proj.kept)), 2):
        v = omega[(proj.kept[a], proj.kept[b])]
        if v:
            coeffs[(a + 1, b + 1)] = v
    omega_h = KForm(h.dim, 2, coeffs)
    assert not ce_diff(h, omega_h), "contraction of a closed form by a central vector is closed"
    return h, omega_h


STANDARD_PHI = "e123+e145+e167+e246-e257-e347-e356"
STANDARD_PSI = "e4567+e2367+e2345+e1357-e1346-e1256-e1247"


__all__ = [
    "G2Error",
    "G2Verdict",
    "GramMatrix",
    "STANDARD_PHI",
    "STANDARD_PSI",
    "b_matrix",
    "b_matrix_direct",
    "b_matrix_numeric",
    "b_terms",
    "central_contraction",
    "hodge_star_numeric",
    "is_coclosed_numeric",
    "is_g2",
    "is_stable",
    "metric_numeric",
    "symplectic_check",
]
