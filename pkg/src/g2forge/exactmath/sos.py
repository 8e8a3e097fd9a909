"""Sign certificates: perfect squares, SOS of quadratic forms, common factors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import isqrt
from typing import Iterable, Sequence

from .linalg import ldl_psd
from .poly import Monomial, Polynomial, lex_key, mono_div, mono_gcd, mono_mul


def _rational_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    n, d = isqrt(c.numerator), isqrt(c.denominator)
    if n * n == c.numerator and d * d == c.denominator:
        return Fraction(n, d)
    return None


def perfect_square_root(p: Polynomial) -> Polynomial | None:
    """Return q with q*q == p and positive leading coefficient, else None."""
    p = Polynomial.coerce(p)
    if not p:
        return Polynomial()
    deg = p.degree()
    if deg % 2:
        return None
    lm, lc = p.leading_term()
    if any(lm.count(v) % 2 for v in set(lm)):
        return None
    root_c = _rational_sqrt(lc)
    if root_c is None:
        return None
    q_lm = tuple(sorted(lm)[::2])
    q = Polynomial({q_lm: root_c})
    last = q_lm
    while True:
        rem = p - q * q
        if not rem:
            return q
        rm, rc = rem.leading_term()
        try:
            tm = mono_div(rm, q_lm)
        except ArithmeticError:
            return None
        # each new term must sit strictly below the previous ones in lex order
        if len(tm) > deg // 2 or lex_key(tm) <= lex_key(last):
            return None
        q = q + Polynomial({tm: rc / (2 * root_c)})
        last = tm


@dataclass(frozen=True)
class SOSWitness:
    """p == sum(c * L**2 for c, L in terms), with c > 0 and L linear."""

    terms: tuple[tuple[Fraction, Polynomial], ...]
    variables: tuple[str, ...]

    def expand(self) -> Polynomial:
        out = Polynomial()
        for c, lin in self.terms:
            out = out + lin * lin * c
        return out

    def to_json(self) -> list:
        return [{"c": str(c), "L": str(lin)} for c, lin in self.terms]


def quadratic_gram(p: Polynomial, quad_vars: Sequence[str]) -> list[list[Fraction]]:
    """Symmetric Gram matrix of a quadratic form; ValueError if p is not one."""
    idx = {v: i for i, v in enumerate(quad_vars)}
    n = len(quad_vars)
    Q = [[Fraction(0)] * n for _ in range(n)]
    for mono, c in p.items():
        if len(mono) != 2 or any(v not in idx for v in mono):
            raise ValueError(f"{p} is not a quadratic form in {list(quad_vars)}")
        i, j = idx[mono[0]], idx[mono[1]]
        if i == j:
            Q[i][i] += c
        else:
            Q[i][j] += c / 2
            Q[j][i] += c / 2
    return Q


def sos_certify(p: Polynomial, quad_vars: Iterable[str] | None = None) -> SOSWitness | None:
    """Exact SOS decomposition of a PSD quadratic form via LDL^T."""
    p = Polynomial.coerce(p)
    names = tuple(sorted(set(quad_vars) if quad_vars is not None else p.variables))
    Q = quadratic_gram(p, names)
    fact = ldl_psd(Q)
    if fact is None:
        return None
    L, D = fact
    n = len(names)
    terms = []
    for k in range(n):
        if not D[k]:
            continue
        lin = Polynomial({(names[r],): L[r][k] for r in range(k, n)})
        terms.append((D[k], lin))
    witness = SOSWitness(tuple(terms), names)
    assert witness.expand() == p
    return witness


def _monomial_content(ps: Sequence[Polynomial]) -> Monomial:
    monos = [m for p in ps for m in p.terms]
    return reduce(mono_gcd, monos) if monos else ()


def _sympy_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    import sympy

    names = sorted(set(a.variables) | set(b.variables))
    if not names:
        return Polynomial.const(1)
    syms = sympy.symbols(names)

    def to_sym(p):
        return sympy.Poly.from_dict(
            {
                tuple(m.count(n) for n in names): sympy.Rational(c.numerator, c.denominator)
                for m, c in p.items()
            },
            *syms,
            domain="QQ",
        )

    g = sympy.gcd(to_sym(a), to_sym(b))
    out = {}
    for exps, c in g.as_dict().items():
        mono = tuple(n for n, e in zip(names, exps) for _ in range(e))
        out[mono] = Fraction(int(c.p), int(c.q))
    return Polynomial(out)


def _normalize_unit(f: Polynomial) -> Polynomial:
    """Primitive integer polynomial with positive leading coefficient."""
    if not f:
        return Polynomial.const(1)
    f = f / f.content()
    if f.leading_term()[1] < 0:
        f = -f
    return f


def poly_gcd(ps: Sequence[Polynomial]) -> Polynomial:
    ps = [Polynomial.coerce(p) for p in ps if p]
    if not ps:
        return Polynomial.const(1)
    mono = _monomial_content(ps)
    reduced = [Polynomial({mono_div(m, mono): c for m, c in p.items()}) for p in ps]
    g = reduced[0]
    for q in reduced[1:]:
        if g.is_constant():
            break
        g = _sympy_gcd(g, q) if len(g) > 1 and len(q) > 1 else Polynomial.const(1)
    g = _normalize_unit(g) if not g.is_constant() else Polynomial.const(1)
    return g * Polynomial({mono: 1})


def common_factor(ps: Sequence) -> tuple[Polynomial, list[Polynomial]]:
    """(f, reduced) with reduced[i] * f == ps[i] and f the normalized GCD."""
    ps = [Polynomial.coerce(p) for p in ps]
    if not ps:
        raise ValueError("common_factor needs a nonempty sequence")
    f = poly_gcd(ps)
    reduced = [p.exact_div(f) if p else Polynomial() for p in ps]
    return f, reduced


def split_constant(p: Polynomial) -> tuple[Fraction, Polynomial]:
    """p == c * q with q primitive with positive leading coefficient."""
    if not p:
        return Fraction(0), p
    q = _normalize_unit(p)
    c = p.leading_term()[1] / q.leading_term()[1]
    return c, q


def signed_sos(p: Polynomial) -> tuple[int, SOSWitness] | None:
    """Certify p >= 0 (sign +1) or p <= 0 (sign -1) as +/- an SOS quadratic form."""
    if not p:
        return None
    try:
        w = sos_certify(p)
        if w is not None:
            return 1, w
        w = sos_certify(-p)
        if w is not None:
            return -1, w
    except ValueError:
        return None
    return None


def mono_poly(mono: Monomial) -> Polynomial:
    return Polynomial({mono: 1})


__all__ = [
    "SOSWitness",
    "common_factor",
    "mono_mul",
    "perfect_square_root",
    "poly_gcd",
    "quadratic_gram",
    "signed_sos",
    "sos_certify",
    "split_constant",
]
