"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Used when a form carries a coefficient such as ``sqrt2``: the radical is
kept as a polynomial variable during exterior computations and reduced
with ``reduce_surd`` before sign decisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .poly import Polynomial


@dataclass(frozen=True)
class QuadraticSurd:
    """The number a + b*sqrt(d) with rational a, b and squarefree d > 1."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d < 2 or isqrt(self.d) ** 2 == self.d:
            raise ValueError(f"sqrt({self.d}) is not irrational")

    def _lift(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise ValueError("mixed quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other):
        o = self._lift(other)
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero in quadratic field")
        num = self * o.conjugate()
        return QuadraticSurd(num.a / n, num.b / n, self.d)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        if isinstance(other, QuadraticSurd):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d)) if self.b else hash(self.a)

    def sign(self) -> int:
        """Exact sign, deciding a + b*sqrt(d) by comparing squares."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # a^2 == d*b^2 is impossible for irrational sqrt(d) and nonzero a, b
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def __float__(self):
        return float(self.a) + float(self.b) * self.d**0.5

    def __str__(self):
        from .poly import render_rational

        if not self.b:
            return render_rational(self.a)
        rad = f"sqrt({self.d})"
        b = "" if abs(self.b) == 1 else render_rational(abs(self.b)) + "*"
        if not self.a:
            return ("-" if self.b < 0 else "") + b + rad
        return f"{render_rational(self.a)}{'-' if self.b < 0 else '+'}{b}{rad}"


def reduce_surd(p: Polynomial, name: str, d: int) -> Polynomial:
    """Rewrite ``name**2 -> d`` so p has degree at most 1 in ``name``."""
    out = {}
    for mono, c in p.items():
        e = mono.count(name)
        rest = tuple(v for v in mono if v != name)
        key = rest + ((name,) if e % 2 else ())
        out[key] = out.get(key, 0) + c * Fraction(d) ** (e // 2)
    return Polynomial(out)


def to_surd(x, name: str, d: int) -> QuadraticSurd:
    """Convert a ring element involving only ``name`` into a QuadraticSurd."""
    if not isinstance(x, Polynomial):
        return QuadraticSurd(Fraction(x), Fraction(0), d)
    r = reduce_surd(x, name, d)
    extra = set(r.variables) - {name}
    if extra:
        raise ValueError(f"unbound variables {sorted(extra)} in {x}")
    return QuadraticSurd(r.coefficient(()), r.coefficient((name,)), d)
