"""Gauss extension of a p-adic valuation to polynomials and rational
functions over Q.

The value of a nonzero polynomial is the minimum p-adic valuation of its
coefficients; the value of f/g is the difference of the values.  The
extension restricts to the base valuation on constants and has the same
value group (witnesses: constants p and 1).

Expression grammar accepted by :func:`parse_rational` (also used by the
``gauss`` CLI subcommand), EBNF in docs/gauss-grammar.md:

    expr     = sum , [ "/" , sum ] ;
    sum      = [ "-" ] , term , { ("+" | "-") , term } ;
    term     = factor , { [ "*" ] , factor | "/" , integer } ;
    factor   = integer | variable , [ "^" , integer ] | "(" , sum , ")" ;
    variable = "x" | "y" | "z" | "x" , digits ;

A "/" whose right operand is a bare integer folds into the coefficient;
otherwise it splits the expression into numerator and denominator.  Only
one level of parentheses is allowed and only one polynomial division.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import HflabError, PreconditionError


class Polynomial:
    """Multivariate polynomial over Q: sparse map from exponent tuples to
    nonzero Fraction coefficients, over an ordered variable tuple."""

    __slots__ = ("vars", "coeffs")

    def __init__(self, vars=(), coeffs=None):
        self.vars = tuple(vars)
        self.coeffs = {}
        for expo, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                self.coeffs[tuple(expo)] = c

    @classmethod
    def constant(cls, c):
        c = Fraction(c)
        return cls((), {(): c} if c else {})

    @classmethod
    def variable(cls, name):
        return cls((name,), {(1,): Fraction(1)})

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return all(all(e == 0 for e in expo) for expo in self.coeffs)

    def constant_value(self):
        if not self.is_constant():
            raise PreconditionError("not a constant polynomial")
        return sum(self.coeffs.values(), Fraction(0))

    def _aligned(self, other):
        vars = tuple(sorted(set(self.vars) | set(other.vars)))

        def remap(poly):
            pos = [vars.index(v) for v in poly.vars]
            out = {}
            for expo, c in poly.coeffs.items():
                new = [0] * len(vars)
                for p, e in zip(pos, expo):
                    new[p] = e
                key = tuple(new)
                out[key] = out.get(key, Fraction(0)) + c
            return out

        return vars, remap(self), remap(other)

    def __add__(self, other):
        vars, a, b = self._aligned(other)
        for k, v in b.items():
            a[k] = a.get(k, Fraction(0)) + v
        return Polynomial(vars, a)

    def __sub__(self, other):
        return self + (other * Polynomial.constant(-1))

    def __mul__(self, other):
        vars, a, b = self._aligned(other)
        out = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                k = tuple(x + y for x, y in zip(ka, kb)) if vars else ()
                out[k] = out.get(k, Fraction(0)) + va * vb
        return Polynomial(vars, out)

    def scale(self, c):
        return Polynomial(self.vars, {k: v * Fraction(c) for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        _, a, b = self._aligned(other)
        return a == b

    def __repr__(self):
        return f"Polynomial({self.vars}, {self.coeffs})"


def padic_valuation(x, p) -> "int | float":
    """v_p of a rational number; infinity for 0."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class GaussValuation:
    """The Gauss extension of the p-adic valuation on Q to Q[x1..xn]:
    monomials are units, so the value of a polynomial is the minimum of the
    coefficient values.  ``nvars`` is bookkeeping only; inputs may use any
    of the documented variables."""

    p: int
    nvars: int = 0

    def of_constant(self, c):
        return padic_valuation(c, self.p)

    def of_polynomial(self, f: Polynomial):
        if f.is_zero():
            return math.inf
        return min(padic_valuation(c, self.p) for c in f.coeffs.values())

    def of_rational(self, num: Polynomial, den: Polynomial):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return math.inf
        return self.of_polynomial(num) - self.of_polynomial(den)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+|[xyz])|(\^)|(\+)|(-)|(\*)|(/)|(\()|(\)))")


class ExpressionError(HflabError):
    """Unparseable gauss expression."""


def _tokenize(s):
    pos, out = 0, []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"cannot tokenize at {s[pos:]!r}")
        pos = m.end()
        idx = m.lastindex
        text = m.group(idx)
        kind = ("num", "var", "pow", "plus", "minus", "mul", "div", "lpar", "rpar")[idx - 1]
        out.append((kind, text))
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        if self.pos >= len(self.tokens):
            raise ExpressionError("unexpected end of expression")
        k, text = self.tokens[self.pos]
        if kind and k != kind:
            raise ExpressionError(f"expected {kind}, found {text!r}")
        self.pos += 1
        return text

    def parse_sum(self, depth):
        sign = 1
        if self.peek() == "minus":
            self.take()
            sign = -1
        node = self.parse_term(depth).scale(sign)
        while self.peek() in ("plus", "minus"):
            op = self.take()
            rhs = self.parse_term(depth)
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term(self, depth):
        node = self.parse_factor(depth)
        while True:
            k = self.peek()
            if k == "mul":
                self.take()
                node = node * self.parse_factor(depth)
            elif k == "div" and self.pos + 1 < len(self.tokens) \
                    and self.tokens[self.pos + 1][0] == "num":
                # numeric divisor folds into the coefficient
                self.take()
                d = int(self.take("num"))
                if d == 0:
                    raise ZeroDivisionError("zero denominator")
                node = node.scale(Fraction(1, d))
            elif k in ("num", "var", "lpar"):
                node = node * self.parse_factor(depth)
            else:
                return node

    def parse_factor(self, depth):
        k = self.peek()
        if k == "num":
            return Polynomial.constant(int(self.take()))
        if k == "var":
            name = self.take()
            e = 1
            if self.peek() == "pow":
                self.take()
                e = int(self.take("num"))
            return Polynomial((name,), {(e,): Fraction(1)})
        if k == "lpar":
            if depth >= 1:
                raise ExpressionError("parentheses nested beyond one level")
            self.take()
            node = self.parse_sum(depth + 1)
            self.take("rpar")
            return node
        raise ExpressionError(f"unexpected token at position {self.pos}")


def parse_rational(text):
    """Parse an expression into (numerator, denominator) polynomials; the
    denominator is the constant 1 unless a polynomial division appears."""
    parser = _Parser(_tokenize(text))
    num = parser.parse_sum(0)
    den = Polynomial.constant(1)
    if parser.peek() == "div":
        parser.take()
        den = parser.parse_sum(0)
    if parser.pos != len(parser.tokens):
        raise ExpressionError("trailing input after expression"
                              " (only one polynomial division is allowed)")
    return num, den


def gauss_extend(p: int, expr_or_poly, den: Polynomial = None):
    """Gauss value of a polynomial, a (num, den) pair, or an expression
    string."""
    v = GaussValuation(p)
    if isinstance(expr_or_poly, str):
        num, d = parse_rational(expr_or_poly)
        return v.of_rational(num, d)
    if den is not None:
        return v.of_rational(expr_or_poly, den)
    if isinstance(expr_or_poly, Polynomial):
        return v.of_polynomial(expr_or_poly)
    return v.of_constant(expr_or_poly)
