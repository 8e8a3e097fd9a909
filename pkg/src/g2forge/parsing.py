"""Parser for polynomial expressions and linear combinations of basis forms.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/')? unary)*      # juxtaposition multiplies
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := NUMBER | NAME | BASIS | '(' expr ')'

``BASIS`` is ``e`` followed by single-digit indices, e.g. ``e147``.
A term may contain at most one basis factor; division is only by
rational constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactmath.poly import Polynomial, render_rational


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_µμλ][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)
_BASIS = re.compile(r"e(\d+)$")


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    text = text.replace("−", "-").replace("·", "*")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos, text)
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        if kind == "name" and _BASIS.match(val):
            kind = "basis"
        toks.append(_Tok(kind, val, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


# A parsed value: mapping from basis key (tuple of indices, or None for scalars)
# to a Polynomial coefficient.
_Value = dict


class _Parser:
    def __init__(self, text: str, params: frozenset[str] | None, dim: int | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.params = params
        self.dim = dim

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.text)

    def parse(self) -> _Value:
        v = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected token {self.peek().value!r}")
        return v

    def expr(self) -> _Value:
        v = self.term()
        while self.peek().value in ("+", "-") and self.peek().kind == "op":
            op = self.take().value
            rhs = self.term()
            v = _add(v, rhs if op == "+" else _neg(rhs))
        return v

    def _starts_atom(self) -> bool:
        t = self.peek()
        return t.kind in ("num", "name", "basis") or (t.kind == "op" and t.value == "(")

    def term(self) -> _Value:
        v = self.unary()
        while True:
            t = self.peek()
            if t.kind == "op" and t.value == "*":
                self.take()
                v = self._mul(v, self.unary(), t)
            elif t.kind == "op" and t.value == "/":
                self.take()
                rhs = self.unary()
                if set(rhs) != {None} or not rhs[None].is_constant() or not rhs[None]:
                    self.error("division only by nonzero rational constants", t)
                c = rhs[None].constant_value()
                v = {k: p / c for k, p in v.items()}
            elif self._starts_atom():
                v = self._mul(v, self.unary(), t)
            else:
                return v

    def _mul(self, a: _Value, b: _Value, tok: _Tok) -> _Value:
        out: _Value = {}
        for ka, pa in a.items():
            for kb, pb in b.items():
                if ka is not None and kb is not None:
                    self.error("product of two basis forms", tok)
                key = ka if ka is not None else kb
                out[key] = out.get(key, Polynomial()) + pa * pb
        return {k: p for k, p in out.items() if p}

    def unary(self) -> _Value:
        t = self.peek()
        if t.kind == "op" and t.value in ("+", "-"):
            self.take()
            v = self.unary()
            return v if t.value == "+" else _neg(v)
        return self.power()

    def power(self) -> _Value:
        v = self.atom()
        t = self.peek()
        if t.kind == "op" and t.value in ("^", "**"):
            self.take()
            e = self.take()
            if e.kind != "num" or not e.value.isdigit():
                self.error("exponent must be a nonnegative integer", e)
            n = int(e.value)
            if any(k is not None for k in v) and n != 1:
                self.error("power of a basis form", e)
            if n != 1:
                v = {None: v.get(None, Polynomial()) ** n}
        return v

    def atom(self) -> _Value:
        t = self.take()
        if t.kind == "num":
            return {None: Polynomial.const(Fraction(t.value))}
        if t.kind == "name":
            name = _canonical_name(t.value)
            if self.params is not None and name not in self.params:
                self.error(f"unknown parameter {t.value!r}", t)
            return {None: Polynomial.var(name)}
        if t.kind == "basis":
            return {self._basis_key(t): Polynomial.const(1)}
        if t.kind == "op" and t.value == "(":
            v = self.expr()
            if self.peek().value != ")":
                self.error("expected ')'")
            self.take()
            return v
        self.error(f"unexpected token {t.value!r}" if t.kind != "end" else "unexpected end of input", t)

    def _basis_key(self, t: _Tok):
        digits = [int(c) for c in _BASIS.match(t.value).group(1)]
        if len(set(digits)) != len(digits):
            self.error(f"repeated index in {t.value}", t)
        if any(d < 1 for d in digits) or (self.dim is not None and any(d > self.dim for d in digits)):
            self.error(f"index out of range in {t.value}", t)
        return tuple(digits)


def _canonical_name(name: str) -> str:
    return {"μ": "mu", "µ": "mu", "λ": "lambda"}.get(name, name)


def _add(a: _Value, b: _Value) -> _Value:
    out = dict(a)
    for k, p in b.items():
        s = out.get(k, Polynomial()) + p
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _neg(a: _Value) -> _Value:
    return {k: -p for k, p in a.items()}


def parse_polynomial(text: str, params=None) -> Polynomial:
    v = _Parser(text, frozenset(params) if params is not None else None, None).parse()
    if any(k is not None for k in v):
        raise ParseError("basis form in a scalar expression", 0, text)
    return v.get(None, Polynomial())


def parse_combination(text: str, params=None, dim: int | None = None) -> dict[tuple[int, ...], Polynomial]:
    """Parse a linear combination of basis forms into {index tuple: coefficient}.

    Index tuples are returned as written; callers normalize order and sign.
    A bare ``0`` yields an empty mapping.
    """
    v = _Parser(text, frozenset(params) if params is not None else None, dim).parse()
    if None in v and v[None]:
        raise ParseError("scalar term without a basis form", 0, text)
    return {k: p for k, p in v.items() if k is not None}


def _coef_text(c) -> str:
    if isinstance(c, Polynomial):
        if c.is_constant():
            return render_rational(c.constant_value())
        return str(c)
    if isinstance(c, float):
        return repr(c)
    return render_rational(Fraction(c))


def render_combination(terms: Mapping[tuple[int, ...], object]) -> str:
    """Render {index tuple: coefficient} as e.g. ``-e147+2*e236+(1+mu)*e47``."""
    pieces = []
    for idx in sorted(terms):
        c = terms[idx]
        if not c:
            continue
        name = "e" + "".join(str(i) for i in idx)
        if isinstance(c, Polynomial) and not c.is_constant():
            if len(c) == 1:
                mono, coef = next(c.items())
                if coef < 0:
                    body = f"{_coef_text(-c)}*{name}"
                    pieces.append("-" + body)
                    continue
                pieces.append("+" + f"{c}*{name}")
            else:
                pieces.append(f"+({c})*{name}")
            continue
        if isinstance(c, Polynomial):
            c = c.constant_value()
        neg = c < 0
        a = -c if neg else c
        body = name if a == 1 else f"{_coef_text(a)}*{name}"
        pieces.append(("-" if neg else "+") + body)
    text = "".join(pieces)
    return text[1:] if text.startswith("+") else (text or "0")
