"""Alternating forms on the dual of a Lie algebra.

A :class:`KForm` maps strictly increasing 1-based index tuples to
coefficients.  Coefficients may be ``Fraction``, :class:`Polynomial` or
``float``; arithmetic is duck-typed over whichever ring is in use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exactmath.poly import Polynomial, substitute, to_float
from .lie import LieAlgebra
from .parsing import parse_combination, render_combination

Index = tuple


class FormError(ValueError):
    pass


def sort_with_sign(idx: Sequence[int]) -> tuple[int, Index]:
    """Sign of the permutation sorting idx, and the sorted tuple (0 if repeated)."""
    if len(set(idx)) != len(idx):
        return 0, ()
    inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return (-1 if inv % 2 else 1), tuple(sorted(idx))


def _merge_sign(a: Index, b: Index) -> int:
    """Sign of e^a ^ e^b -> e^(sorted a+b) for disjoint sorted a, b."""
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return -1 if inv % 2 else 1


def _clean(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Polynomial) and c.is_constant():
        return c.constant_value()
    return c


@dataclass(frozen=True, eq=False)
class KForm:
    dim: int
    degree: int
    coeffs: Mapping[Index, object] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.degree <= self.dim:
            raise FormError(f"degree {self.degree} outside 0..{self.dim}")
        clean = {}
        for idx, c in self.coeffs.items():
            idx = tuple(idx)
            if len(idx) != self.degree:
                raise FormError(f"index {idx} does not have degree {self.degree}")
            if any(not 1 <= i <= self.dim for i in idx):
                raise FormError(f"index {idx} out of range 1..{self.dim}")
            if any(idx[a] >= idx[a + 1] for a in range(len(idx) - 1)):
                raise FormError(f"index {idx} is not strictly increasing")
            c = _clean(c)
            if c:
                clean[idx] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def _raw(cls, dim: int, degree: int, coeffs: dict) -> "KForm":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "coeffs", {k: _clean(c) for k, c in coeffs.items() if c})
        return obj

    @classmethod
    def zero(cls, dim: int, degree: int) -> "KForm":
        return cls._raw(dim, degree, {})

    @classmethod
    def basis(cls, dim: int, idx: Sequence[int], coeff=Fraction(1)) -> "KForm":
        s, key = sort_with_sign(idx)
        if not s:
            return cls.zero(dim, len(idx))
        return cls(dim, len(idx), {key: coeff * s})

    @classmethod
    def from_terms(cls, dim: int, degree: int, terms: Mapping[Sequence[int], object]) -> "KForm":
        """Build from possibly unsorted index tuples, applying permutation signs."""
        acc: dict = {}
        for idx, c in terms.items():
            s, key = sort_with_sign(tuple(idx))
            if s:
                acc[key] = acc.get(key, 0) + (c if s > 0 else -c)
        return cls(dim, degree, acc)

    # -- inspection -------------------------------------------------------

    def __getitem__(self, idx: Sequence[int]):
        s, key = sort_with_sign(tuple(idx))
        if not s:
            return Fraction(0)
        c = self.coeffs.get(key, Fraction(0))
        return c if s > 0 else -c

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return (self.dim, self.degree, self.coeffs) == (other.dim, other.degree, other.coeffs)

    __hash__ = None

    @property
    def variables(self) -> tuple[str, ...]:
        names = set()
        for c in self.coeffs.values():
            if isinstance(c, Polynomial):
                names.update(c.variables)
        return tuple(sorted(names))

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "KForm"):
        if self.dim != other.dim:
            raise FormError(f"dimension mismatch {self.dim} != {other.dim}")

    def __add__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree:
            raise FormError("cannot add forms of different degree")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return KForm._raw(self.dim, self.degree, out)

    def __neg__(self):
        return KForm._raw(self.dim, self.degree, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, KForm):
            return NotImplemented
        return KForm._raw(self.dim, self.degree, {k: c * scalar for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def map(self, fn) -> "KForm":
        return KForm._raw(self.dim, self.degree, {k: fn(c) for k, c in self.coeffs.items()})

    def substitute(self, bindings: Mapping[str, object]) -> "KForm":
        return self.map(lambda c: substitute(c, bindings))

    def to_float(self, env: Mapping[str, float] | None = None) -> "KForm":
        return self.map(lambda c: to_float(c, env))

    def wedge(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def contract(self, v) -> "KForm":
        return contract(v, self)

    def __str__(self) -> str:
        return render_form(self)

    def __repr__(self) -> str:
        return f"KForm({self.dim}, {self.degree}, {render_form(self)!r})"


def wedge(a: KForm, b: KForm) -> KForm:
    a._check(b)
    deg = a.degree + b.degree
    if deg > a.dim:
        return KForm.zero(a.dim, min(deg, a.dim))
    out: dict = {}
    for ia, ca in a.coeffs.items():
        sa = set(ia)
        for ib, cb in b.coeffs.items():
            if sa.intersection(ib):
                continue
            key = tuple(sorted(ia + ib))
            term = ca * cb
            if _merge_sign(ia, ib) < 0:
                term = -term
            out[key] = out[key] + term if key in out else term
    return KForm._raw(a.dim, deg, out)


def contract(v, a: KForm) -> KForm:
    """Interior product of a vector (1-based basis index or coordinate list) with a."""
    if a.degree == 0:
        raise FormError("cannot contract a 0-form")
    if isinstance(v, int):
        vec = {v: Fraction(1)}
    else:
        if len(v) != a.dim:
            raise FormError("vector length does not match form dimension")
        vec = {i + 1: x for i, x in enumerate(v) if x}
    out: dict = {}
    for idx, c in a.coeffs.items():
        for pos, i in enumerate(idx):
            x = vec.get(i)
            if x is None:
                continue
            key = idx[:pos] + idx[pos + 1 :]
            term = c * x
            if pos % 2:
                term = -term
            out[key] = out[key] + term if key in out else term
    return KForm._raw(a.dim, a.degree - 1, out)


@lru_cache(maxsize=65536)
def _d_basis(g: LieAlgebra, idx: Index) -> KForm:
    """d(e^idx) via the anti-derivation rule from de^k = -sum c^k_ij e^ij."""
    n = g.dim
    if not idx:
        return KForm.zero(n, 1)
    if len(idx) == 1:
        k = idx[0]
        return KForm._raw(n, 2, {(i, j): -c for (i, j, kk), c in g.constants if kk == k})
    first = KForm._raw(n, 1, {idx[:1]: Fraction(1)})
    rest = KForm._raw(n, len(idx) - 1, {idx[1:]: Fraction(1)})
    return wedge(_d_basis(g, idx[:1]), rest) - wedge(first, _d_basis(g, idx[1:]))


def ce_diff(g: LieAlgebra, a: KForm) -> KForm:
    """Chevalley-Eilenberg differential of a left-invariant form."""
    if g.dim != a.dim:
        raise FormError("form and algebra dimensions differ")
    if a.degree == a.dim:
        return KForm.zero(a.dim, a.dim)
    out: dict = {}
    for idx, c in a.coeffs.items():
        for key, v in _d_basis(g, idx).coeffs.items():
            term = v * c
            out[key] = out[key] + term if key in out else term
    return KForm._raw(a.dim, a.degree + 1, out)


def d_matrix(g: LieAlgebra, k: int) -> tuple[list[list], list[Index], list[Index]]:
    """Matrix of d: Lambda^k -> Lambda^{k+1} in lexicographic multi-index bases."""
    n = g.dim
    cols = list(combinations(range(1, n + 1), k))
    rows = list(combinations(range(1, n + 1), k + 1)) if k < n else []
    row_pos = {r: a for a, r in enumerate(rows)}
    M = [[Fraction(0)] * len(cols) for _ in rows]
    for b, idx in enumerate(cols):
        if k == n:
            continue
        for key, v in _d_basis(g, idx).coeffs.items():
            M[row_pos[key]][b] = v
    return M, rows, cols


def var_name(prefix: str, idx: Sequence[int]) -> str:
    return prefix + "".join(str(i) for i in idx)


def generic_form(g_or_dim, k: int, prefix: str = "p") -> KForm:
    """Sum of fresh variables prefix+indices times e^indices over all multi-indices."""
    n = g_or_dim.dim if isinstance(g_or_dim, LieAlgebra) else int(g_or_dim)
    return KForm._raw(
        n, k, {idx: Polynomial.var(var_name(prefix, idx)) for idx in combinations(range(1, n + 1), k)}
    )


def parse_form(text: str, dim: int, params: Iterable[str] | None = None) -> KForm:
    """Parse e.g. ``-e147+2*e236+1/2*mu*e247`` into a KForm of dimension dim."""
    combo = parse_combination(text, params=params, dim=dim)
    if not combo:
        raise FormError("cannot infer the degree of the zero form; use KForm.zero")
    degrees = {len(k) for k in combo}
    if len(degrees) != 1:
        raise FormError("terms of mixed degree")
    return KForm.from_terms(dim, degrees.pop(), combo)


def render_form(a: KForm) -> str:
    if not a.coeffs:
        return "0"
    if all(isinstance(c, float) for c in a.coeffs.values()):
        pieces = []
        for idx in sorted(a.coeffs):
            c = a.coeffs[idx]
            pieces.append(f"{c:+.12g}*e" + "".join(map(str, idx)))
        text = "".join(pieces)
        return text[1:] if text.startswith("+") else text
    return render_combination(a.coeffs)


def top_coefficient(a: KForm):
    """Coefficient of e^{12...n} in a top-degree form."""
    if a.degree != a.dim:
        raise FormError("not a top-degree form")
    return a.coeffs.get(tuple(range(1, a.dim + 1)), Fraction(0))


def power(a: KForm, m: int) -> KForm:
    out = KForm._raw(a.dim, 0, {(): Fraction(1)})
    for _ in range(m):
        out = wedge(out, a)
    return out


__all__ = [
    "FormError",
    "KForm",
    "ce_diff",
    "contract",
    "d_matrix",
    "generic_form",
    "parse_form",
    "power",
    "render_form",
    "sort_with_sign",
    "top_coefficient",
    "var_name",
    "wedge",
]
