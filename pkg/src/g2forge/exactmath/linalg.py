"""Exact linear algebra over Q and Q[parameters].

Matrices are plain lists of rows.  Entries are ``int``/``Fraction`` or
:class:`Polynomial`; elimination is fraction-free (Bareiss) with the pivot
rule "leftmost column, smallest row index with a nonzero entry".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

import numpy as np

from .poly import Polynomial, simplify

Matrix = list


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in Bareiss step")
        return q
    if isinstance(a, Polynomial) or isinstance(b, Polynomial):
        return Polynomial.coerce(a).exact_div(b)
    return a / b


def _copy(M: Sequence[Sequence]) -> Matrix:
    return [list(row) for row in M]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]


def is_symmetric(M: Sequence[Sequence]) -> bool:
    n = len(M)
    return all(len(row) == n for row in M) and all(
        M[i][j] == M[j][i] for i in range(n) for j in range(i + 1, n)
    )


def integer_rows(M: Sequence[Sequence]) -> Matrix:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in M:
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


@dataclass(frozen=True)
class Echelon:
    """Fraction-free reduced echelon form.

    Every pivot row ``i`` has ``rows[i][pivots[i]] == den`` and zeros in the
    other pivot columns.  ``pivot_values`` lists the pivot chosen at each
    elimination step; the form is valid wherever all of them are nonzero.
    """

    rows: Matrix
    pivots: tuple[int, ...]
    den: object
    pivot_values: tuple


def ff_rref(M: Sequence[Sequence]) -> Echelon:
    """Fraction-free Gauss-Jordan elimination (Bareiss)."""
    A = _copy(M)
    nrows, ncols = shape(A)
    den = 1
    pivots: list[int] = []
    pivot_values = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if A[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            A[r], A[pr] = A[pr], A[r]
        piv = A[r][c]
        prow = A[r]
        for i in range(nrows):
            if i == r:
                continue
            row = A[i]
            f = row[c]
            if f:
                A[i] = [_exact_div(piv * x - f * y, den) for x, y in zip(row, prow)]
            elif den != piv:
                A[i] = [_exact_div(piv * x, den) for x in row]
        pivots.append(c)
        pivot_values.append(piv)
        den = piv
        r += 1
    return Echelon(A[: len(pivots)], tuple(pivots), den, tuple(pivot_values))


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    if all(not isinstance(x, Polynomial) for row in M for x in row):
        M = integer_rows(M)
    return len(ff_rref(M).pivots)


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Kernel basis of a rational matrix, one vector per free column.

    The vector for free column j has a 1 in position j, zeros in the other
    free columns, so the basis is the reduced-echelon kernel basis.
    """
    n = ncols if ncols is not None else shape(M)[1]
    if not M:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    ech = ff_rref(integer_rows(M))
    free = [j for j in range(n) if j not in set(ech.pivots)]
    basis = []
    for j in free:
        v = [Fraction(0)] * n
        v[j] = Fraction(1)
        for i, p in enumerate(ech.pivots):
            v[p] = Fraction(-ech.rows[i][j], ech.den)
        basis.append(v)
    return basis


@dataclass(frozen=True)
class ParametricKernel:
    basis: list
    validity: tuple
    free_columns: tuple[int, ...]
    pivot_columns: tuple[int, ...]
    scale: object


def parametric_nullspace(M: Sequence[Sequence], ncols: int | None = None) -> ParametricKernel:
    """Kernel of a matrix over Q[params], valid where no pivot in validity vanishes.

    When the final Bareiss denominator divides every entry the basis is
    normalized like :func:`nullspace`; otherwise vectors carry the common
    factor ``scale`` in their free coordinate.
    """
    n = ncols if ncols is not None else shape(M)[1]
    if not M:
        return ParametricKernel(nullspace([], n), (), tuple(range(n)), (), Fraction(1))
    A = [[x if isinstance(x, Polynomial) else Fraction(x) for x in row] for row in M]
    ech = ff_rref(A)
    pivset = set(ech.pivots)
    free = [j for j in range(n) if j not in pivset]
    den = ech.den
    normalized = True
    scaled_cols = {}
    for j in free:
        col = []
        for i in range(len(ech.pivots)):
            x = ech.rows[i][j]
            try:
                col.append(simplify(-_exact_div(x, den)) if x else Fraction(0))
            except ArithmeticError:
                normalized = False
                break
        if not normalized:
            break
        scaled_cols[j] = col
    basis = []
    for j in free:
        v: list = [Fraction(0)] * n
        if normalized:
            v[j] = Fraction(1)
            for i, p in enumerate(ech.pivots):
                v[p] = scaled_cols[j][i]
        else:
            v[j] = simplify(den)
            for i, p in enumerate(ech.pivots):
                v[p] = simplify(-ech.rows[i][j])
        basis.append(v)
    validity = []
    for pv in ech.pivot_values:
        pv = Polynomial.coerce(pv) if not isinstance(pv, Polynomial) else pv
        if not pv.is_constant() and pv not in validity:
            validity.append(pv)
    return ParametricKernel(
        basis,
        tuple(validity),
        tuple(free),
        ech.pivots,
        Fraction(1) if normalized else simplify(den),
    )


def determinant(M: Sequence[Sequence]):
    """Exact determinant by Bareiss elimination with row swaps."""
    n, m = shape(M)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    A = _copy(M)
    if all(isinstance(x, (int, Fraction)) for row in A for x in row):
        A = [[Fraction(x) for x in row] for row in A]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        pr = next((i for i in range(k, n) if A[i][k]), None)
        if pr is None:
            return Fraction(0)
        if pr != k:
            A[k], A[pr] = A[pr], A[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = _exact_div(piv * A[i][j] - A[i][k] * A[k][j], prev)
            A[i][k] = Fraction(0)
        prev = piv
    d = A[n - 1][n - 1]
    return simplify(d if sign > 0 else -d)


def _default_sign(x) -> int:
    if isinstance(x, Polynomial):
        x = x.constant_value()
    return (x > 0) - (x < 0)


def inertia(M: Sequence[Sequence], sign: Callable[[object], int] = _default_sign) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by exact congruence diagonalization."""
    if not is_symmetric(M):
        raise ValueError("inertia requires a symmetric matrix")
    A = _copy(M)
    active = list(range(len(A)))
    pos = neg = 0
    while active:
        k = next((i for i in active if A[i][i]), None)
        if k is None:
            pair = next(
                ((i, j) for a, i in enumerate(active) for j in active[a + 1 :] if A[i][j]),
                None,
            )
            if pair is None:
                break
            i, j = pair
            # congruence e_i -> e_i + e_j makes the (i, i) entry 2*A[i][j]
            for c in active:
                A[i][c] = A[i][c] + A[j][c]
            for r in active:
                A[r][i] = A[r][i] + A[r][j]
            k = i
        p = A[k][k]
        s = sign(p)
        pos += s > 0
        neg += s < 0
        rest = [i for i in active if i != k]
        for r in rest:
            f = A[r][k]
            if not f:
                continue
            for c in rest:
                if A[k][c]:
                    A[r][c] = A[r][c] - f * A[k][c] / p
        active = rest
    return pos, neg, len(M) - pos - neg


def definiteness(M: Sequence[Sequence], sign: Callable[[object], int] = _default_sign) -> str:
    """One of 'positive', 'negative', 'indefinite', 'degenerate' (det M = 0)."""
    pos, neg, zero = inertia(M, sign)
    if zero:
        return "degenerate"
    if neg == 0:
        return "positive"
    if pos == 0:
        return "negative"
    return "indefinite"


def leading_minors(M: Sequence[Sequence]) -> list:
    return [determinant([row[:k] for row in M[:k]]) for k in range(1, len(M) + 1)]


def ldl_psd(Q: Sequence[Sequence]) -> tuple[Matrix, list] | None:
    """Exact LDL^T of a symmetric rational matrix in the given order.

    Returns (L, D) with unit lower-triangular L, or None when Q is not
    positive semidefinite.  A zero pivot is allowed only when its whole
    remaining column vanishes.
    """
    n = len(Q)
    A = [[Fraction(x) for x in row] for row in Q]
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D: list[Fraction] = []
    for k in range(n):
        p = A[k][k]
        if p < 0:
            return None
        if p == 0:
            if any(A[r][k] for r in range(k + 1, n)):
                return None
            D.append(Fraction(0))
            continue
        D.append(p)
        for r in range(k + 1, n):
            L[r][k] = A[r][k] / p
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                A[r][c] -= L[r][k] * A[k][c]
    return L, D


def min_eigenvalue_numeric(M) -> float:
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("square matrix required")
    if not np.allclose(A, A.T, atol=1e-9, rtol=0):
        raise ValueError("matrix is not symmetric within 1e-9")
    return float(np.linalg.eigvalsh((A + A.T) / 2)[0])
