"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is stored as a sorted tuple of variable names with repetition,
so ``x^2*y`` is ``("x", "x", "y")``.  Multiplying monomials is then a
merge of two sorted tuples.  The global term order is lexicographic on
variable names (alphabetically smaller names are larger variables).
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

Monomial = tuple  # tuple[str, ...], sorted

_SENTINEL = "\U0010ffff"

Scalar = Union[int, Fraction]
RingElement = Union[Fraction, "Polynomial"]


class NotDivisibleError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def lex_key(mono: Monomial) -> tuple:
    """Sort key putting lexicographically larger monomials first."""
    return mono + (_SENTINEL,)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def mono_exponents(mono: Monomial) -> dict[str, int]:
    return dict(Counter(mono))


def mono_from_exponents(exps: Mapping[str, int]) -> Monomial:
    out: list[str] = []
    for name in sorted(exps):
        e = exps[name]
        if e < 0:
            raise ValueError("negative exponent")
        out.extend([name] * e)
    return tuple(out)


def mono_divides(d: Monomial, m: Monomial) -> bool:
    cd, cm = Counter(d), Counter(m)
    return all(cm[v] >= e for v, e in cd.items())


def mono_div(m: Monomial, d: Monomial) -> Monomial:
    cm = Counter(m)
    cm.subtract(d)
    if any(e < 0 for e in cm.values()):
        raise NotDivisibleError("monomial not divisible")
    return mono_from_exponents({v: e for v, e in cm.items() if e})


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    ca, cb = Counter(a), Counter(b)
    return mono_from_exponents({v: min(e, cb[v]) for v, e in ca.items() if v in cb})


def _render_mono(mono: Monomial) -> str:
    parts = []
    for name, e in sorted(Counter(mono).items()):
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def render_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    key = tuple(sorted(mono))
                    clean[key] = clean.get(key, Fraction(0)) + Fraction(c)
            clean = {m: c for m, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls._raw({(name,): Fraction(1)})

    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def coerce(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return cls.const(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to Polynomial")

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def variables(self) -> tuple[str, ...]:
        names = set()
        for m in self._terms:
            names.update(m)
        return tuple(sorted(names))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((len(m) for m in self._terms), default=-1)

    def degree_in(self, names: Iterable[str]) -> int:
        names = set(names)
        return max((sum(1 for v in m if v in names) for m in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"polynomial {self} is not constant")
        return self._terms.get((), Fraction(0))

    def coefficient(self, mono: Iterable[str]) -> Fraction:
        return self._terms.get(tuple(sorted(mono)), Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: lex_key(mc[0]))

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = min(self._terms, key=lex_key)
        return m, self._terms[m]

    def is_homogeneous(self) -> bool:
        return len({len(m) for m in self._terms}) <= 1

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        from math import gcd

        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Polynomial):
            terms = dict(self._terms)
            for m, c in other._terms.items():
                s = terms.get(m, 0) + c
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
            return Polynomial._raw(terms)
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            terms = dict(self._terms)
            s = terms.get((), 0) + other
            if s:
                terms[()] = Fraction(s)
            else:
                terms.pop((), None)
            return Polynomial._raw(terms)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (Polynomial, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def scale(self, c: Scalar) -> "Polynomial":
        if not c:
            return Polynomial._raw({})
        return Polynomial._raw({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial._raw({})
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, Fraction] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return Polynomial._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, Polynomial):
            if other.is_constant():
                return self / other.constant_value()
            return self.exact_div(other)
        return NotImplemented

    def exact_div(self, divisor: "Polynomial | Scalar") -> "Polynomial":
        """Quotient of an exact division; raises NotDivisibleError otherwise."""
        divisor = Polynomial.coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.is_constant():
            return self / divisor.constant_value()
        dm, dc = divisor.leading_term()
        rem = dict(self._terms)
        quot: dict[Monomial, Fraction] = {}
        dterms = list(divisor._terms.items())
        while rem:
            m = min(rem, key=lex_key)
            c = rem[m]
            qm = mono_div(m, dm)
            qc = c / dc
            quot[qm] = quot.get(qm, 0) + qc
            for tm, tc in dterms:
                pm = mono_mul(qm, tm)
                s = rem.get(pm, 0) - qc * tc
                if s:
                    rem[pm] = s
                else:
                    rem.pop(pm, None)
        return Polynomial._raw({m: c for m, c in quot.items() if c})

    def divides(self, other: "Polynomial") -> bool:
        try:
            Polynomial.coerce(other).exact_div(self)
        except NotDivisibleError:
            return False
        return True

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {(): Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution and evaluation ---------------------------------------

    def subs(self, bindings: Mapping[str, "Scalar | Polynomial"]) -> "Polynomial":
        """Substitute variables; names absent from self are ignored."""
        relevant = {k: v for k, v in bindings.items() if k in set(self.variables)}
        if not relevant:
            return self
        powers: dict[tuple[str, int], RingElement] = {}
        out = Polynomial._raw({})
        for mono, c in self._terms.items():
            rest: list[str] = []
            factor: RingElement = Fraction(c)
            for name, e in Counter(mono).items():
                if name in relevant:
                    key = (name, e)
                    if key not in powers:
                        val = relevant[name]
                        powers[key] = val**e if isinstance(val, Polynomial) else Fraction(val) ** e
                    factor = factor * powers[key]
                else:
                    rest.extend([name] * e)
            term = Polynomial._raw({tuple(sorted(rest)): Fraction(1)})
            out = out + term * factor
        return out

    def evaluate(self, env: Mapping[str, object]):
        """Evaluate with every variable bound; the value type follows env."""
        total = 0
        for mono, c in self._terms.items():
            v = c
            for name in mono:
                v = v * env[name]
            total = total + v
        return total

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = render_rational(a)
            elif a == 1:
                body = _render_mono(mono)
            else:
                body = f"{render_rational(a)}*{_render_mono(mono)}"
            if i == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(sign + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def as_poly(x) -> Polynomial:
    return Polynomial.coerce(x)


def simplify(x):
    """Collapse constant polynomials to Fraction; leave other values alone."""
    if isinstance(x, Polynomial) and x.is_constant():
        return x.constant_value()
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_zero(x) -> bool:
    return not x


def free_symbols(x) -> tuple[str, ...]:
    return x.variables if isinstance(x, Polynomial) else ()


def substitute(x, bindings):
    """Substitute into a ring element (Fraction or Polynomial)."""
    if isinstance(x, Polynomial):
        return simplify(x.subs(bindings))
    return x


def to_float(x, env: Mapping[str, float] | None = None) -> float:
    if isinstance(x, Polynomial):
        if x.is_constant():
            return float(x.constant_value())
        if env is None:
            raise ValueError(f"unbound variables in {x}")
        return float(sum(float(c) * _prod(env[n] for n in m) for m, c in x.items()))
    return float(x)


def _prod(values) -> float:
    out = 1.0
    for v in values:
        out *= v
    return out
