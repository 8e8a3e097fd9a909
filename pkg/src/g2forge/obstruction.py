"""Closed 3-form spaces and exact non-existence certificates.

A certificate is an exact polynomial identity over the generic closed
3-form which forbids b_phi from ever being definite.  Certificates carry
the structure equations they were computed from so that
:func:`verify_certificate` can recheck them from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exactmath.linalg import definiteness, determinant, nullspace, parametric_nullspace
from .exactmath.poly import Polynomial, simplify
from .exterior import KForm, d_matrix, var_name
from .g2core import GramMatrix, b_matrix


@dataclass(frozen=True, eq=False)
class ClosedFormSpace:
    algebra: object
    degree: int
    basis: tuple
    free_vars: tuple[str, ...]
    generic: KForm
    validity: tuple = ()
    pivot_columns: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, values) -> KForm:
        """The element sum values[i] * basis[i]; values may be a list or a name map."""
        if isinstance(values, Mapping):
            values = [values.get(n, 0) for n in self.free_vars]
        if len(values) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(values)}")
        out = KForm.zero(self.algebra.dim, self.degree)
        for v, b in zip(values, self.basis):
            if v:
                out = out + b * v
        return out


def closed_space(g, k: int = 3, prefix: str = "p", prefer_free: Sequence[Sequence[int]] = ()) -> ClosedFormSpace:
    """Kernel of d on k-forms, with free variables named after free columns.

    Columns are the k-indices in lexicographic order, except that indices
    listed in ``prefer_free`` are moved to the end.  Elimination picks the
    leftmost pivots, so every pivot coefficient is written in terms of the
    coefficients of later, free multi-indices.
    """
    M, _, lex_cols = d_matrix(g, k)
    preferred = [tuple(c) for c in prefer_free]
    order = [j for j, c in enumerate(lex_cols) if c not in preferred]
    order += [j for j, c in enumerate(lex_cols) if c in preferred]
    cols = [lex_cols[j] for j in order]
    M = [[row[j] for j in order] for row in M if any(row)]
    symbolic = any(isinstance(x, Polynomial) for row in M for x in row)
    n = len(cols)
    validity = ()
    if symbolic:
        ker = parametric_nullspace(M, n)
        vectors, free, pivots, validity = ker.basis, ker.free_columns, ker.pivot_columns, ker.validity
    else:
        vectors = nullspace(M, n)
        pivots = _pivots_of(M, n)
        free = [j for j in range(n) if j not in set(pivots)]
    basis = tuple(KForm(g.dim, k, {cols[j]: v[j] for j in range(n) if v[j]}) for v in vectors)
    names = tuple(var_name(prefix, cols[j]) for j in free)
    generic = KForm.zero(g.dim, k)
    for name, b in zip(names, basis):
        generic = generic + b * Polynomial.var(name)
    return ClosedFormSpace(g, k, basis, names, generic, tuple(validity), tuple(cols[j] for j in pivots))


def _pivots_of(M, n) -> tuple[int, ...]:
    from .exactmath.linalg import ff_rref, integer_rows

    if not M:
        return ()
    return ff_rref(integer_rows(M)).pivots


def generic_gram(space: ClosedFormSpace) -> GramMatrix:
    if space.degree != 3 or space.algebra.dim != 7:
        raise ValueError("the Gram matrix needs closed 3-forms in dimension 7")
    return b_matrix(space.algebra, space.generic)


# -- certificates --------------------------------------------------------------

ZERO_DIAGONAL = "ZeroDiagonal"
DIAGONAL_PRODUCT = "DiagonalProduct"
SUBSPACE_MINOR = "SubspaceMinor"
SCRIPTED_L76 = "ScriptedL76"
KINDS = (ZERO_DIAGONAL, DIAGONAL_PRODUCT, SUBSPACE_MINOR, SCRIPTED_L76)


class CertificateError(ValueError):
    pass


@dataclass
class Certificate:
    kind: str
    witness: dict
    text: str = ""
    algebra: str = ""
    structure: str = ""
    residuals: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "algebra": self.algebra,
            "structure": self.structure,
            "witness": self.witness,
            "residuals": self.residuals,
            "text": self.text,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Certificate":
        if data.get("kind") not in KINDS:
            raise CertificateError(f"unknown certificate kind {data.get('kind')!r}")
        return cls(
            data["kind"],
            dict(data["witness"]),
            data.get("text", ""),
            data.get("algebra", ""),
            data.get("structure", ""),
            dict(data.get("residuals", {})),
        )


def _stamp(cert: Certificate, g) -> Certificate:
    if g is not None:
        cert.algebra = g.label
        cert.structure = g.structure_text()
    return cert


def _b(i: int, j: int | None = None) -> str:
    j = i if j is None else j
    return f"b(e{i},e{j})"


def find_zero_diagonal(B: GramMatrix, g=None) -> list[Certificate]:
    out = []
    for i in range(B.dim):
        if not B[i, i]:
            cert = Certificate(
                ZERO_DIAGONAL,
                {"index": i + 1},
                f"{_b(i + 1)} = 0 for every closed 3-form, so b_phi is never definite.",
            )
            out.append(_stamp(cert, g))
    return out


def merge_zero_diagonal(certs: Sequence[Certificate]) -> Certificate:
    """One ZeroDiagonal certificate listing every vanishing diagonal entry."""
    idx = sorted(c.witness["index"] if "index" in c.witness else c.witness["indices"][0] for c in certs)
    names = ",".join(f"e{i}" for i in idx)
    cert = Certificate(
        ZERO_DIAGONAL,
        {"indices": idx},
        f"b(v,v) = 0 identically for v in {{{names}}}; a definite form has no isotropic vectors.",
        certs[0].algebra,
        certs[0].structure,
    )
    return cert


def _sos_terms(witness) -> list[dict]:
    return [{"c": str(c), "q": str(q)} for c, q in witness]


def _nonneg_witness(p: Polynomial) -> list[tuple[Fraction, Polynomial]] | None:
    """Write p as sum c_k q_k^2 with c_k > 0, or return None.

    Tries, in order: p == 0, p = c * q^2, and p = m^2 * Q with m a monomial
    and Q a positive semidefinite quadratic form.
    """
    from .exactmath.sos import perfect_square_root, sos_certify, split_constant

    p = Polynomial.coerce(p)
    if not p:
        return []
    c, q = split_constant(p)
    if c > 0:
        root = perfect_square_root(q)
        if root is not None:
            return [(c, root)]
    monos = list(p.terms)
    common = monos[0]
    for m in monos[1:]:
        common = tuple(v for v in sorted(set(common)) for _ in range(min(common.count(v), m.count(v))))
    half = tuple(v for v in sorted(set(common)) for _ in range(common.count(v) // 2))
    h = Polynomial({half: 1})
    rest = p.exact_div(h * h)
    if rest.degree() != 2 or not rest.is_homogeneous():
        return None
    try:
        w = sos_certify(rest)
    except ValueError:
        return None
    if w is None:
        return None
    return [(cc, h * lin) for cc, lin in w.terms]


def _expand(terms) -> Polynomial:
    out = Polynomial()
    for c, q in terms:
        out = out + q * q * c
    return out


def restricted_gram(B: GramMatrix, vectors: Sequence[Sequence]) -> list[list]:
    n = B.dim
    m = len(vectors)
    R = [[Fraction(0)] * m for _ in range(m)]
    for a in range(m):
        for b in range(a, m):
            s = Polynomial()
            for i in range(n):
                if not vectors[a][i]:
                    continue
                for j in range(n):
                    if vectors[b][j] and B[i, j]:
                        s = s + Polynomial.coerce(B[i, j]) * (Fraction(vectors[a][i]) * Fraction(vectors[b][j]))
            R[a][b] = R[b][a] = simplify(s)
    return R


def _vec_text(v) -> str:
    terms = {(i + 1,): Fraction(x) for i, x in enumerate(v) if x}
    from .parsing import render_combination

    return render_combination(terms).replace("e", "e_")


def subspace_minor_certificate(B: GramMatrix, vectors: Sequence[Sequence], g=None) -> Certificate | None:
    """Certificate from the restriction of b_phi to span(vectors), m in {1, 2}."""
    m = len(vectors)
    if m not in (1, 2):
        raise NotImplementedError("only 1- and 2-dimensional subspaces are supported")
    vectors = [[Fraction(x) for x in v] for v in vectors]
    from .exactmath.linalg import rank

    if rank(vectors) != m:
        raise CertificateError("vectors are not linearly independent")
    R = restricted_gram(B, vectors)
    span = ", ".join(_vec_text(v) for v in vectors)
    if m == 1:
        if R[0][0]:
            return None
        cert = Certificate(
            SUBSPACE_MINOR,
            {"vectors": [[str(x) for x in v] for v in vectors], "squares": []},
            f"b(v,v) = 0 identically for v = {span}.",
        )
        return _stamp(cert, g)
    minus_det = Polynomial.coerce(R[0][1]) * R[0][1] - Polynomial.coerce(R[0][0]) * R[1][1]
    terms = _nonneg_witness(minus_det)
    if terms is None:
        return None
    assert _expand(terms) == minus_det
    shown = " + ".join(f"{c}*({q})^2" for c, q in terms) or "0"
    cert = Certificate(
        SUBSPACE_MINOR,
        {"vectors": [[str(x) for x in v] for v in vectors], "squares": _sos_terms(terms)},
        f"On span({span}) the restricted Gram determinant satisfies -det = {shown} >= 0; "
        "a definite form restricts to a definite 2x2 block with det > 0.",
    )
    return _stamp(cert, g)


def _diagonal_sum(B: GramMatrix, idx: Sequence[int]) -> Polynomial:
    s = Polynomial()
    for i in idx:
        s = s + Polynomial.coerce(B[i - 1, i - 1])
    return s


def _signed_square_sum(r: Polynomial) -> tuple[Fraction, list] | None:
    """r = c * S with S a nonzero sum of positive multiples of squares."""
    from .exactmath.sos import signed_sos

    if r.is_constant():
        v = r.constant_value()
        return (v, [(Fraction(1), Polynomial.const(1))]) if v else None
    got = signed_sos(r)
    if got is None:
        return None
    sgn, w = got
    return Fraction(sgn), list(w.terms)


def _descending(pairs):
    return sorted(pairs, key=lambda p: tuple(-x for x in reversed(p)))


def default_candidates(n: int = 7, directions: Sequence[int] | None = None) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs (L1, L2) of disjoint diagonal index sets of size 1 or 2, in search order.

    Candidates inside ``directions`` come first, then the rest.  Within each
    block: singleton pairs, then singleton against pair, then pair against
    pair, each ordered so that higher basis indices are tried first.
    """
    def block(idx):
        idx = sorted(idx)
        singles = [(i,) for i in idx]
        pairs = _descending(combinations(idx, 2))
        out = [((i,), (j,)) for i, j in _descending(combinations(idx, 2))]
        out += [(a, b) for b in pairs for a in reversed(singles) if a[0] not in b]
        out += [(a, b) for a, b in combinations(pairs, 2) if not set(a) & set(b)]
        return out

    first = block(directions) if directions else []
    seen = set(first)
    return first + [c for c in block(range(1, n + 1)) if c not in seen]


def _univariate_on_line(p: Polynomial, a: Mapping[str, int], b: Mapping[str, int]) -> list[Fraction]:
    """Coefficients (low to high) of t -> p(a + t*b), by exact interpolation."""
    d = p.degree()
    xs = list(range(d + 1))
    ys = [Fraction(p.evaluate({v: a[v] + t * b[v] for v in a})) for t in xs]
    # Newton divided differences, then expand to monomial coefficients
    coef = list(ys)
    for j in range(1, d + 1):
        for i in range(d, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)] * (d + 1)
    for i in range(d, -1, -1):
        # out = out * (t - xs[i]) + coef[i]
        shifted = [Fraction(0)] + out[:-1]
        out = [s - xs[i] * o for s, o in zip(shifted, out)]
        out[0] += coef[i]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def _resultant(f: list[Fraction], g: list[Fraction]) -> Fraction:
    m, n = len(f) - 1, len(g) - 1
    if m <= 0 or n <= 0:
        return Fraction(1)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + f[::-1] + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + g[::-1] + [Fraction(0)] * (size - n - 1 - i))
    return Fraction(determinant(rows))


def _may_share_factor(p: Polynomial, q: Polynomial, lines: int = 2) -> bool:
    """False only if p and q certainly have no common nonconstant factor.

    A common factor survives restriction to a line unless it happens to be
    constant there, so two seeded random lines with nonzero resultants rule
    it out; this is a pruning step only and never affects soundness.
    """
    import numpy as np

    names = sorted(set(p.variables) | set(q.variables))
    if not names or p.is_constant() or q.is_constant():
        return True
    rng = np.random.default_rng([len(names), p.degree(), q.degree()])
    for _ in range(lines):
        a = {v: int(x) for v, x in zip(names, rng.integers(-50, 51, len(names)))}
        b = {v: int(x) for v, x in zip(names, rng.integers(-50, 51, len(names)))}
        fp, fq = _univariate_on_line(p, a, b), _univariate_on_line(q, a, b)
        if len(fp) - 1 < p.degree() or len(fq) - 1 < q.degree():
            return True
        if _resultant(fp, fq) == 0:
            return True
    return False


def find_diagonal_product(B: GramMatrix, candidates=None, g=None, directions=None) -> Certificate | None:
    from .exactmath.sos import common_factor

    if any(isinstance(x, Polynomial) and set(x.variables) & set(_param_names(g)) for r in B.entries for x in r):
        raise CertificateError("diagonal products need instantiated parameters")
    for L1, L2 in candidates or default_candidates(B.dim, directions):
        p1, p2 = _diagonal_sum(B, L1), _diagonal_sum(B, L2)
        if not p1 or not p2:
            continue
        if p1.degree() + p2.degree() > 2 and not _may_share_factor(p1, p2):
            continue
        f, (r1, r2) = common_factor([p1, p2])
        s1 = _signed_square_sum(r1)
        if s1 is None:
            continue
        s2 = _signed_square_sum(r2)
        if s2 is None or s1[0] * s2[0] >= 0:
            continue
        (c1, t1), (c2, t2) = s1, s2
        lhs = " + ".join(_b(i) for i in L1)
        rhs = " + ".join(_b(i) for i in L2)
        cert = Certificate(
            DIAGONAL_PRODUCT,
            {
                "L1": list(L1),
                "L2": list(L2),
                "f": str(f),
                "c1": str(c1),
                "c2": str(c2),
                "S1": _sos_terms(t1),
                "S2": _sos_terms(t2),
            },
            f"L1 = {lhs} = ({c1})*f*S1 and L2 = {rhs} = ({c2})*f*S2 with f = {f} and S1, S2 sums "
            f"of squares, so L1*L2 = ({c1 * c2})*f^2*S1*S2 <= 0; a definite b_phi would make L1*L2 > 0.",
        )
        return _stamp(cert, g)
    return None


def symbolic_common_factor(g, L1: Sequence[int], L2: Sequence[int], f) -> bool:
    """True iff f divides both diagonal sums with the parameters of g left symbolic.

    The sum-of-squares part of a diagonal product is only certified at
    grid points; this checks the factor structure for the whole family.
    """
    f = _poly(f) if isinstance(f, str) else Polynomial.coerce(f)
    B = generic_gram(closed_space(g, 3))
    p1, p2 = _diagonal_sum(B, L1), _diagonal_sum(B, L2)
    return bool(p1) and bool(p2) and f.divides(p1) and f.divides(p2)


def _param_names(g) -> tuple[str, ...]:
    return tuple(g.params) if g is not None else ()


# -- the scripted L_{7,6} argument ------------------------------------------------

L76_FREE = ((2, 4, 6), (2, 4, 7), (3, 4, 6), (3, 4, 7), (3, 5, 7))
L76_SUPPORT = tuple(var_name("p", c) for c in L76_FREE)


def _l76_relations(b1, b2, b3, b4, R) -> dict[str, tuple]:
    """name -> (lhs, rhs) with both sides cleared of b1 denominators."""
    q = b4 * b2 * 4 - b3 * b3
    return {
        "b1*B55 = 3*b1*b3": (b1 * R[1][1], b1 * b3 * 3),
        "b1*B56 = 9*b1*b4": (b1 * R[1][2], b1 * b4 * 9),
        "b1*B57 = 4*b2*b4-b3^2": (b1 * R[1][3], q),
        "b1*B66 = 3*(4*b2*b4-b3^2)": (b1 * R[2][2], q * 3),
        "b1^2*B67 = -(2*b1*b3*b4-4*b2^2*b4+b3^2*b2)": (
            b1 * b1 * R[2][3],
            -(b1 * b3 * b4 * 2 - b2 * b2 * b4 * 4 + b3 * b3 * b2),
        ),
        "b1^2*B77 = -(8*b1*b4^2-4*b2*b3*b4+b3^3)": (
            b1 * b1 * R[3][3],
            -(b1 * b4 * b4 * 8 - b2 * b3 * b4 * 4 + b3 * b3 * b3),
        ),
    }


def _l76_symbolic_identities() -> dict[str, Polynomial]:
    """Residuals of the determinant and discriminant identities in b1..b4."""
    b1, b2, b3, b4 = (Polynomial.var(f"b{i}") for i in range(1, 5))
    q = b4 * b2 * 4 - b3 * b3
    B67n = -(b1 * b3 * b4 * 2 - b2 * b2 * b4 * 4 + b3 * b3 * b2)
    B77n = -(b1 * b4 * b4 * 8 - b2 * b3 * b4 * 4 + b3 * b3 * b3)
    # D * B * D with D = diag(1, 1, b1, b1) clears every denominator
    M = [
        [b1, b2, b3 * b1, b4 * b1],
        [b2, b3 * 3, b4 * 9 * b1, q],
        [b3 * b1, b4 * 9 * b1, q * 3 * b1, B67n],
        [b4 * b1, q, B67n, B77n],
    ]
    quartic = b1 * b1 * b4 * b4 * 27 - b1 * b2 * b3 * b4 * 18 + b1 * b3 ** 3 * 4 + b2 ** 3 * b4 * 4 - b2 * b2 * b3 * b3
    det_res = Polynomial.coerce(determinant(M)) - quartic * quartic
    # quartic as a quadratic A*b4^2 + Bq*b4 + C in b4
    A = b1 * b1 * 27
    Bq = b1 * b2 * b3 * (-18) + b2 ** 3 * 4
    C = b1 * b3 ** 3 * 4 - b2 * b2 * b3 * b3
    disc_res = (Bq * Bq - A * C * 4) - (b1 * b3 * 3 - b2 * b2) ** 3 * (-16)
    quad_res = quartic - (A * b4 * b4 + Bq * b4 + C)
    return {
        "det(B_r)*b1^4 = (27*b1^2*b4^2-18*b1*b2*b3*b4+4*b1*b3^3+4*b2^3*b4-b2^2*b3^2)^2": det_res,
        "quartic = 27*b1^2*b4^2+(-18*b1*b2*b3+4*b2^3)*b4+(4*b1*b3^3-b2^2*b3^2)": quad_res,
        "discriminant in b4 = -16*(3*b1*b3-b2^2)^3": disc_res,
    }


L76_REPORT = """\
Restrict b_phi to the radical <e4,e5,e6,e7> and write b1..b4 for its first row.
(1) Entry relations: every entry of the restricted Gram matrix B_r is the stated
    rational function of b1..b4 (checked with denominators cleared).
(2) det(B_r) = Q^2 / b1^4 with Q the quoted quartic, so det(B_r) >= 0 and a
    nonsingular B_r has signature (4,0), (0,4) or (2,2).
(3) Q is a quadratic in b4 with discriminant -16(3 b1 b3 - b2^2)^3.  If B_r were
    definite with b1 > 0, Sylvester's criterion needs 3 b1 b3 - b2^2 > 0 and Q < 0;
    the discriminant is then negative while the leading coefficient 27 b1^2 is
    positive, so Q > 0, a contradiction.  The case b1 < 0 is symmetric (replace
    phi by -phi), and flipping the orientation only negates B_r.
Hence B_r has signature (2,2) whenever it is nonsingular and b_phi is never definite."""


def verify_l76(g, space: ClosedFormSpace | None = None, B: GramMatrix | None = None) -> Certificate:
    """Check the polynomial identities behind the signature (2,2) argument."""
    space = space or closed_space(g, 3, prefer_free=L76_FREE)
    B = B or generic_gram(space)
    R = [[Polynomial.coerce(B[i, j]) for j in range(3, 7)] for i in range(3, 7)]
    b1, b2, b3, b4 = R[0]
    residuals: dict[str, str] = {}
    failed = {}
    for name, (lhs, rhs) in _l76_relations(b1, b2, b3, b4, R).items():
        res = lhs - rhs
        residuals[name] = str(res) if res else "0"
        if res:
            failed[name] = res
    for name, res in _l76_symbolic_identities().items():
        residuals[name] = str(res) if res else "0"
        if res:
            failed[name] = res
    support = {}
    for k, b in enumerate((b1, b2, b3, b4), start=1):
        ok = bool(b) and b.is_homogeneous() and b.degree() == 3 and set(b.variables) <= set(L76_SUPPORT)
        support[f"b{k}"] = {"polynomial": str(b), "homogeneous_cubic_in_support": ok}
        if not ok:
            failed[f"support b{k}"] = b
    if failed:
        name, res = next(iter(failed.items()))
        raise CertificateError(f"L76 identity {name!r} fails with residual {res}")
    cert = Certificate(
        SCRIPTED_L76,
        {"b": {k: v["polynomial"] for k, v in support.items()}, "support": list(L76_SUPPORT)},
        L76_REPORT,
        residuals=residuals,
    )
    return _stamp(cert, g)


def is_l76(g) -> bool:
    from .catalog import catalog_get

    ref = catalog_get("L7_6")
    return g.dim == ref.dim and g.constants == ref.constants


# -- sampling ----------------------------------------------------------------------


def _rng(seed: int, index: int):
    import numpy as np

    return np.random.default_rng([seed, index])


def random_point(space: ClosedFormSpace, seed: int, index: int) -> list[Fraction]:
    """Coordinates with integer numerators in [-10, 10] and denominators 1..4."""
    rng = _rng(seed, index)
    nums = rng.integers(-10, 11, size=space.dim)
    dens = rng.integers(1, 5, size=space.dim)
    return [Fraction(int(a), int(b)) for a, b in zip(nums, dens)]


def classify_point(space: ClosedFormSpace, coords: Sequence[Fraction]) -> str:
    B = b_matrix(space.algebra, space.point(coords))
    if not B.det():
        return "singular"
    kind = definiteness(B.rows())
    return "definite" if kind in ("positive", "negative") else "indefinite"


def sample_definiteness(g, trials: int, seed: int = 0, space: ClosedFormSpace | None = None) -> dict[str, int]:
    counts = {"definiteCount": 0, "indefiniteCount": 0, "singularCount": 0}
    if trials <= 0:
        return counts
    space = space or closed_space(g, 3)
    if space.algebra.is_symbolic:
        raise CertificateError("sampling needs instantiated parameters")
    if space.dim == 0:
        counts["singularCount"] = trials
        return counts
    key = {"definite": "definiteCount", "indefinite": "indefiniteCount", "singular": "singularCount"}
    for t in range(trials):
        counts[key[classify_point(space, random_point(space, seed, t))]] += 1
    return counts


# -- orchestration -----------------------------------------------------------------


def radical_directions(g) -> list[int]:
    """1-based indices i with e_i in the radical of g."""
    from .lie import radical

    rad = radical(g)
    n = g.dim
    return [i for i in range(1, n + 1) if rad.contains([Fraction(int(a == i - 1)) for a in range(n)])]


def _unit(n: int, i: int) -> list[Fraction]:
    return [Fraction(int(a == i - 1)) for a in range(n)]


def obstruct(g, space: ClosedFormSpace | None = None) -> Certificate | None:
    """First certificate found: zero diagonal, diagonal products, radical minors, L76.

    Searches start in the radical directions and try higher basis indices
    first, where the obstruction usually shows up.
    """
    if g.is_symbolic:
        raise CertificateError("obstruct needs instantiated parameters")
    if g.dim != 7:
        raise CertificateError("obstructions are defined for seven-dimensional algebras")
    space = space or closed_space(g, 3)
    B = generic_gram(space)
    zeros = find_zero_diagonal(B, g)
    if zeros:
        return merge_zero_diagonal(zeros)
    rad = radical_directions(g)
    cert = find_diagonal_product(B, g=g, directions=rad)
    if cert is not None:
        return cert
    for i, j in _descending(combinations(rad, 2)):
        cert = subspace_minor_certificate(B, [_unit(7, i), _unit(7, j)], g)
        if cert is not None:
            return cert
    if is_l76(g):
        return verify_l76(g)
    return None


# -- re-verification ------------------------------------------------------------------


def _poly(text: str) -> Polynomial:
    from .parsing import parse_polynomial

    return parse_polynomial(text)


def _squares(items) -> list[tuple[Fraction, Polynomial]]:
    out = []
    for it in items:
        c = Fraction(it["c"])
        if c <= 0:
            raise CertificateError("square coefficients must be positive")
        out.append((c, _poly(it["q"])))
    return out


def verify_certificate(cert: Certificate | Mapping, g=None) -> bool:
    """Recompute the generic Gram matrix from the structure equations and recheck."""
    from .lie import parse_structure_equations

    if isinstance(cert, Mapping):
        cert = Certificate.from_json(cert)
    if g is None:
        if not cert.structure:
            raise CertificateError("certificate carries no structure equations")
        g = parse_structure_equations(cert.structure, label=cert.algebra)
    space = closed_space(g, 3)
    B = generic_gram(space)
    w = cert.witness
    if cert.kind == ZERO_DIAGONAL:
        idx = w["indices"] if "indices" in w else [w["index"]]
        return bool(idx) and all(not B[i - 1, i - 1] for i in idx)
    if cert.kind == SUBSPACE_MINOR:
        vectors = [[Fraction(x) for x in v] for v in w["vectors"]]
        from .exactmath.linalg import rank

        if rank(vectors) != len(vectors) or len(vectors) not in (1, 2):
            return False
        R = restricted_gram(B, vectors)
        if len(vectors) == 1:
            return not R[0][0]
        minus_det = Polynomial.coerce(R[0][1]) * R[0][1] - Polynomial.coerce(R[0][0]) * R[1][1]
        return _expand(_squares(w["squares"])) == minus_det
    if cert.kind == DIAGONAL_PRODUCT:
        L1, L2 = w["L1"], w["L2"]
        if not L1 or not L2 or set(L1) & set(L2):
            return False
        f = _poly(w["f"])
        c1, c2 = Fraction(w["c1"]), Fraction(w["c2"])
        if c1 * c2 >= 0:
            return False
        S1, S2 = _expand(_squares(w["S1"])), _expand(_squares(w["S2"]))
        return _diagonal_sum(B, L1) == f * S1 * c1 and _diagonal_sum(B, L2) == f * S2 * c2
    if cert.kind == SCRIPTED_L76:
        try:
            verify_l76(g)
        except CertificateError:
            return False
        return True
    raise CertificateError(f"unknown certificate kind {cert.kind!r}")


__all__ = [
    "Certificate",
    "CertificateError",
    "ClosedFormSpace",
    "KINDS",
    "classify_point",
    "closed_space",
    "default_candidates",
    "find_diagonal_product",
    "find_zero_diagonal",
    "generic_gram",
    "obstruct",
    "radical_directions",
    "random_point",
    "restricted_gram",
    "sample_definiteness",
    "subspace_minor_certificate",
    "symbolic_common_factor",
    "verify_certificate",
    "verify_l76",
]
