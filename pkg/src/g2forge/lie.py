"""Lie algebras given by structure constants.

Conventions: basis vectors ``e_1..e_n`` and dual forms ``e^1..e^n`` are
1-based.  ``c[i, j, k]`` (with ``i < j``) is the coefficient of ``e_k`` in
``[e_i, e_j]``, and ``de^k = -sum_{i<j} c[i, j, k] e^{ij}``, so the entry
``-e23`` in ``de^1`` means ``[e_2, e_3] = e_1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .exactmath import linalg
from .exactmath.poly import Polynomial, simplify, substitute
from .parsing import ParseError, parse_combination, render_combination

MAX_DIM = 9


class LieAlgebraError(ValueError):
    """Invalid Lie algebra data or operation."""


class JacobiError(LieAlgebraError):
    pass


def _norm(x):
    if isinstance(x, int):
        return Fraction(x)
    return simplify(x)


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    constants: tuple = ()
    params: tuple[str, ...] = ()
    label: str = ""

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise LieAlgebraError(f"dimension must be between 1 and {MAX_DIM}")
        for (i, j, k), _ in self.constants:
            if not (1 <= i < j <= self.dim and 1 <= k <= self.dim):
                raise LieAlgebraError(f"bad structure-constant index {(i, j, k)}")

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Mapping[tuple[int, int, int], object],
        params: Sequence[str] = (),
        label: str = "",
    ) -> "LieAlgebra":
        """Build from {(i, j, k): c} with any i != j; antisymmetry is applied."""
        acc: dict[tuple[int, int, int], object] = {}
        for (i, j, k), c in brackets.items():
            if i == j:
                if c:
                    raise LieAlgebraError(f"[e{i}, e{i}] must vanish")
                continue
            if i > j:
                i, j, c = j, i, -c
            acc[(i, j, k)] = acc.get((i, j, k), Fraction(0)) + c
        consts = tuple(sorted((key, _norm(c)) for key, c in acc.items() if c))
        return cls(dim, consts, tuple(params), label)

    @cached_property
    def table(self) -> dict[tuple[int, int], dict[int, object]]:
        out: dict[tuple[int, int], dict[int, object]] = {}
        for (i, j, k), c in self.constants:
            out.setdefault((i, j), {})[k] = c
        return out

    def c(self, i: int, j: int, k: int):
        if i == j:
            return Fraction(0)
        if i < j:
            return self.table.get((i, j), {}).get(k, Fraction(0))
        return -self.table.get((j, i), {}).get(k, Fraction(0))

    def bracket_basis(self, i: int, j: int) -> dict[int, object]:
        if i == j:
            return {}
        if i < j:
            return dict(self.table.get((i, j), {}))
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def bracket(self, x: Sequence, y: Sequence) -> list:
        """Bracket of two coordinate vectors (0-based lists of length dim)."""
        out: list = [Fraction(0)] * self.dim
        for (i, j), row in self.table.items():
            a = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
            if not a:
                continue
            for k, c in row.items():
                out[k - 1] = out[k - 1] + a * c
        return [_norm(v) for v in out]

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(c, Polynomial) for _, c in self.constants)

    # -- text -------------------------------------------------------------

    def equations(self) -> list[str]:
        """The entries de^1, ..., de^n in the structure-equation format."""
        out = []
        for k in range(1, self.dim + 1):
            terms = {(i, j): -c for (i, j, kk), c in self.constants if kk == k}
            out.append(render_combination(terms) if terms else "0")
        return out

    def structure_text(self) -> str:
        return "(" + ",".join(self.equations()) + ")"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "dim": self.dim,
            "params": list(self.params),
            "equations": self.equations(),
        }

    def __str__(self) -> str:
        return f"{self.label or 'g'} = {self.structure_text()}"


def parse_structure_equations(text: str, params: Sequence[str] = (), label: str = "") -> LieAlgebra:
    """Parse ``(de^1, ..., de^n)`` into a LieAlgebra (Jacobi is not checked)."""
    stripped = text.strip()
    if not (stripped.startswith("(") and stripped.endswith(")")):
        raise ParseError("structure equations must be a parenthesized tuple", 0, text)
    offset = text.index("(") + 1
    body = stripped[1:-1]
    entries = _split_top_level(body)
    dim = len(entries)
    if not 1 <= dim <= MAX_DIM:
        raise ParseError(f"expected between 1 and {MAX_DIM} entries, got {dim}", 0, text)
    brackets = {}
    pos = offset
    for k, entry in enumerate(entries, start=1):
        try:
            combo = parse_combination(entry, params=params, dim=dim)
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], pos + exc.position, text) from None
        for idx, coef in combo.items():
            if len(idx) != 2:
                raise ParseError(f"de^{k} must be a 2-form, got e{''.join(map(str, idx))}", pos, text)
            i, j = idx
            sign = 1 if i < j else -1
            key = (min(i, j), max(i, j), k)
            brackets[key] = brackets.get(key, Fraction(0)) - sign * coef
        pos += len(entry) + 1
    return LieAlgebra.from_brackets(dim, brackets, tuple(params), label)


def _split_top_level(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def from_json(data: Mapping) -> LieAlgebra:
    params = tuple(data.get("params", ()))
    g = parse_structure_equations("(" + ",".join(data["equations"]) + ")", params, data.get("label", ""))
    if "dim" in data and data["dim"] != g.dim:
        raise LieAlgebraError("dim does not match the number of equations")
    return g


def dumps(g: LieAlgebra) -> str:
    return json.dumps(g.to_json())


# -- structural predicates ---------------------------------------------------


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    k: int
    residual: list


def jacobi_check(g: LieAlgebra) -> list[Violation]:
    """Empty list iff the Jacobi identity holds exactly (parameters symbolic)."""
    n = g.dim
    basis = [[Fraction(int(a == b)) for a in range(n)] for b in range(n)]
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                ei, ej, ek = basis[i - 1], basis[j - 1], basis[k - 1]
                s1 = g.bracket(g.bracket(ei, ej), ek)
                s2 = g.bracket(g.bracket(ej, ek), ei)
                s3 = g.bracket(g.bracket(ek, ei), ej)
                res = [_norm(a + b + c) for a, b, c in zip(s1, s2, s3)]
                if any(res):
                    out.append(Violation(i, j, k, res))
    return out


def ad_matrix(g: LieAlgebra, i: int) -> list[list]:
    """Matrix of ad(e_i) acting on column coordinate vectors."""
    n = g.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for j in range(1, n + 1):
        for k, c in g.bracket_basis(i, j).items():
            M[k - 1][j - 1] = c
    return M


def ad_traces(g: LieAlgebra) -> list:
    return [_norm(sum((ad_matrix(g, i)[r][r] for r in range(g.dim)), Fraction(0))) for i in range(1, g.dim + 1)]


def unimodular_conditions(g: LieAlgebra) -> list[Polynomial]:
    """Distinct nonzero trace polynomials that must vanish for unimodularity.

    Each is normalized to be primitive with a positive leading coefficient.
    An empty list means unimodular; a nonzero constant means never.
    """
    from .exactmath.sos import split_constant

    out: list[Polynomial] = []
    for t in ad_traces(g):
        if not t:
            continue
        p = Polynomial.coerce(t)
        _, q = split_constant(p)
        if q not in out:
            out.append(q)
    return out


def is_unimodular(g: LieAlgebra) -> bool:
    conds = unimodular_conditions(g)
    if any(not c.is_constant() for c in conds):
        raise LieAlgebraError(
            "unimodularity depends on parameters; use unimodular_conditions()"
        )
    return not conds


@dataclass(frozen=True)
class Subspace:
    ambient: LieAlgebra
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        if not self.basis:
            return not any(v)
        return linalg.rank(list(self.basis) + [list(v)]) == self.dim


def _require_rational(g: LieAlgebra, what: str):
    if g.is_symbolic:
        raise LieAlgebraError(f"{what} requires instantiated parameters")


def center(g: LieAlgebra) -> Subspace:
    _require_rational(g, "center")
    n = g.dim
    rows = []
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            rows.append([g.c(i, j, k) for i in range(1, n + 1)])
    rows = [r for r in rows if any(r)]
    return Subspace(g, tuple(tuple(v) for v in linalg.nullspace(rows, n)))


def _span(vectors: Sequence[Sequence], n: int) -> list[list[Fraction]]:
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    ech = linalg.ff_rref(linalg.integer_rows(vecs))
    return [[Fraction(x, 1) / ech.den for x in row] for row in ech.rows]


def derived_algebra(g: LieAlgebra, basis: Sequence[Sequence] | None = None) -> list[list[Fraction]]:
    n = g.dim
    if basis is None:
        basis = [[Fraction(int(a == b)) for a in range(n)] for b in range(n)]
    prods = [g.bracket(u, v) for a, u in enumerate(basis) for v in basis[a + 1 :]]
    return _span(prods, n)


def derived_series(g: LieAlgebra) -> tuple[list[int], bool]:
    """Dimensions of g, [g,g], ... until stable; solvable iff it reaches 0."""
    _require_rational(g, "derived series")
    n = g.dim
    cur = [[Fraction(int(a == b)) for a in range(n)] for b in range(n)]
    dims = [n]
    while True:
        nxt = derived_algebra(g, cur)
        if len(nxt) == len(cur):
            break
        dims.append(len(nxt))
        cur = nxt
        if not cur:
            break
    return dims, dims[-1] == 0


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[1]


def killing_form(g: LieAlgebra) -> list[list]:
    n = g.dim
    ads = [ad_matrix(g, i) for i in range(1, n + 1)]
    K = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            A, B = ads[a], ads[b]
            t = sum((A[r][s] * B[s][r] for r in range(n) for s in range(n)), Fraction(0))
            K[a][b] = K[b][a] = _norm(t)
    return K


def is_semisimple(g: LieAlgebra) -> bool:
    _require_rational(g, "semisimplicity")
    return linalg.determinant(killing_form(g)) != 0


def killing_signature(g: LieAlgebra) -> tuple[int, int, int]:
    _require_rational(g, "Killing signature")
    return linalg.inertia(killing_form(g))


def radical(g: LieAlgebra) -> Subspace:
    """Maximal solvable ideal, computed as the Killing-orthogonal of [g, g]."""
    _require_rational(g, "radical")
    n = g.dim
    D = derived_algebra(g)
    K = killing_form(g)
    rows = [linalg.matvec(K, d) for d in D]
    rows = [r for r in rows if any(r)]
    return Subspace(g, tuple(tuple(v) for v in linalg.nullspace(rows, n)))


# -- constructors -------------------------------------------------------------


def direct_sum(g1: LieAlgebra, g2: LieAlgebra, label: str | None = None) -> LieAlgebra:
    n = g1.dim + g2.dim
    if n > MAX_DIM:
        raise LieAlgebraError(f"direct sum has dimension {n} > {MAX_DIM}")
    consts = list(g1.constants)
    s = g1.dim
    consts += [((i + s, j + s, k + s), c) for (i, j, k), c in g2.constants]
    params = tuple(dict.fromkeys(g1.params + g2.params))
    if label is None:
        label = f"{g1.label} ⊕ {g2.label}"
    return LieAlgebra(n, tuple(sorted(consts)), params, label)


@dataclass(frozen=True)
class Projection:
    """How the quotient basis sits inside the original algebra.

    ``kept[r]`` is the original index of the quotient's basis vector
    ``r + 1``; ``dropped`` is the original index replaced by ``xi``.
    """

    xi: tuple
    dropped: int
    kept: tuple[int, ...]

    def project(self, v: Sequence) -> list:
        """Coordinates in the quotient of the image of an original vector."""
        p = self.dropped - 1
        ratio = v[p] / self.xi[p]
        return [_norm(v[k - 1] - ratio * self.xi[k - 1]) for k in self.kept]


def quotient_by_central(g: LieAlgebra, xi: Sequence) -> tuple[LieAlgebra, Projection]:
    _require_rational(g, "quotient")
    xi = tuple(Fraction(x) for x in xi)
    if len(xi) != g.dim or not any(xi):
        raise LieAlgebraError("xi must be a nonzero vector of length dim")
    n = g.dim
    for j in range(1, n + 1):
        ej = [Fraction(int(a == j - 1)) for a in range(n)]
        if any(g.bracket(list(xi), ej)):
            raise LieAlgebraError("xi is not central")
    mag = max(abs(x) for x in xi)
    p = next(i for i in range(1, n + 1) if abs(xi[i - 1]) == mag)
    kept = tuple(i for i in range(1, n + 1) if i != p)
    proj = Projection(xi, p, kept)
    brackets = {}
    for a, i in enumerate(kept, start=1):
        for b, j in enumerate(kept, start=1):
            if a >= b:
                continue
            img = [Fraction(0)] * n
            for k, c in g.bracket_basis(i, j).items():
                img[k - 1] = c
            for r, coef in enumerate(proj.project(img), start=1):
                if coef:
                    brackets[(a, b, r)] = coef
    h = LieAlgebra.from_brackets(n - 1, brackets, (), f"{g.label}/<xi>")
    return h, proj


def instantiate(g: LieAlgebra, bindings: Mapping[str, object], label: str | None = None) -> LieAlgebra:
    """Substitute parameter values and re-verify the Jacobi identity."""
    missing = [p for p in g.params if p not in bindings]
    if missing:
        raise LieAlgebraError(f"missing parameter values for {missing}")
    consts = tuple(
        sorted((key, _norm(substitute(c, bindings))) for key, c in g.constants)
    )
    consts = tuple((k, c) for k, c in consts if c)
    rest = tuple(p for p in g.params if p not in bindings)
    h = LieAlgebra(g.dim, consts, rest, label if label is not None else g.label)
    bad = jacobi_check(h)
    if bad:
        v = bad[0]
        raise JacobiError(f"Jacobi identity fails at {(v.i, v.j, v.k)} after instantiation")
    return h


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, (), (), f"R{n}")


__all__ = [
    "JacobiError",
    "LieAlgebra",
    "LieAlgebraError",
    "Projection",
    "Subspace",
    "abelian",
    "ad_matrix",
    "center",
    "derived_series",
    "direct_sum",
    "from_json",
    "instantiate",
    "is_semisimple",
    "is_solvable",
    "is_unimodular",
    "jacobi_check",
    "killing_form",
    "killing_signature",
    "parse_structure_equations",
    "quotient_by_central",
    "radical",
    "unimodular_conditions",
]
