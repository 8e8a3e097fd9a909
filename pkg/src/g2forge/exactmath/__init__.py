"""Exact rationals, polynomials, fraction-free linear algebra and sign certificates."""

from fractions import Fraction

from .linalg import (
    definiteness,
    determinant,
    ff_rref,
    inertia,
    leading_minors,
    min_eigenvalue_numeric,
    nullspace,
    parametric_nullspace,
    rank,
)
from .poly import NotDivisibleError, Polynomial, simplify, substitute, to_float
from .sos import SOSWitness, common_factor, perfect_square_root, signed_sos, sos_certify
from .surd import QuadraticSurd, reduce_surd, to_surd

Rational = Fraction


def rat_arith(a, b, op: str) -> Fraction:
    """Exact rational arithmetic; ``op`` is one of add, sub, mul, div."""
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


__all__ = [
    "Fraction",
    "NotDivisibleError",
    "Polynomial",
    "QuadraticSurd",
    "Rational",
    "SOSWitness",
    "common_factor",
    "definiteness",
    "determinant",
    "ff_rref",
    "inertia",
    "leading_minors",
    "min_eigenvalue_numeric",
    "nullspace",
    "parametric_nullspace",
    "perfect_square_root",
    "rank",
    "rat_arith",
    "reduce_surd",
    "signed_sos",
    "simplify",
    "sos_certify",
    "substitute",
    "to_float",
    "to_surd",
]
