"""Text and JSON syntax for differential operators.

Text grammar: sums of products of rational numbers, the variable, the
derivation symbol ``D``, parentheses, ``^`` powers with nonnegative integer
exponents, and unary minus.  Multiplication is operator composition, so
``D*z`` parses to ``z*D + 1`` while ``z*D`` is the Euler operator; division
is only defined by order-zero operators (rational-function coefficients).

JSON form: ``{"var": "z", "coeffs": [...]}`` where entry j is the coefficient
of ``D^j``, either an ascending coefficient array (polynomial) or a
``{"num": [...], "den": [...]}`` pair; rationals are exact ``"p/q"`` strings.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InvalidInputError, ParseError
from .operators import DiffOperator
from .polynomials import (
    P_ONE,
    Polynomial,
    RationalFunction,
    as_fraction,
    fraction_str,
)

_TOKEN = re.compile(r"\s*(?:(\d+\.\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
            break
        number, name, symbol = m.groups()
        if number is not None:
            tokens.append(("number", number, m.start(1)))
        elif name is not None:
            tokens.append(("name", name, m.start(2)))
        else:
            tokens.append(("op", symbol, m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, var: str):
        self.tokens = tokens
        self.i = 0
        self.var = var

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, -1)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, symbol: str):
        kind, value, pos = self.next()
        if kind != "op" or value != symbol:
            raise ParseError(f"expected {symbol!r}", position=pos)

    def parse(self) -> DiffOperator:
        result = self.sum_expr()
        kind, value, pos = self.peek()
        if kind is not None:
            raise ParseError(f"trailing input at {value!r}", position=pos)
        return result

    def sum_expr(self) -> DiffOperator:
        result = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.next()
                rhs = self.term()
                result = result + rhs if value == "+" else result - rhs
            else:
                return result

    def term(self) -> DiffOperator:
        result = self.factor()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value in "*/":
                self.next()
                rhs = self.factor()
                if value == "*":
                    result = result * rhs
                else:
                    if rhs.order > 0:
                        raise ParseError("division by an operator of positive order", position=pos)
                    if not rhs:
                        raise ParseError("division by zero", position=pos)
                    result = result.scale(RationalFunction(P_ONE) / rhs.coeffs[0])
            else:
                return result

    def factor(self) -> DiffOperator:
        kind, value, pos = self.peek()
        if kind == "op" and value in "+-":
            self.next()
            inner = self.factor()
            return inner if value == "+" else -inner
        return self.power()

    def power(self) -> DiffOperator:
        base = self.atom()
        kind, value, pos = self.peek()
        if kind == "op" and value == "^":
            self.next()
            kind, value, pos = self.next()
            if kind != "number" or "." in value:
                raise ParseError("exponent must be a nonnegative integer", position=pos)
            return base ** int(value)
        return base

    def atom(self) -> DiffOperator:
        kind, value, pos = self.next()
        if kind == "number":
            return DiffOperator([RationalFunction.from_fraction(Fraction(value))], self.var)
        if kind == "name":
            if value == "D":
                return DiffOperator.derivation(self.var)
            if value == self.var:
                return DiffOperator([RationalFunction(Polynomial.variable())], self.var)
            raise ParseError(f"unknown symbol {value!r}", position=pos)
        if kind == "op" and value == "(":
            inner = self.sum_expr()
            self.expect_op(")")
            return inner
        raise ParseError("expected a number, symbol or parenthesized expression", position=pos)


def parse_operator(text: str, var: str = "z") -> DiffOperator:
    """Parse operator text; raises ParseError with a position on bad input."""
    if var == "D":
        raise InvalidInputError("variable name conflicts with the derivation symbol")
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty operator expression", position=0)
    return _Parser(tokens, var).parse()


def operator_to_json(op: DiffOperator) -> dict:
    coeffs = []
    for c in op.coeffs:
        if c.is_polynomial():
            coeffs.append([fraction_str(x) for x in c.num.coeffs])
        else:
            coeffs.append(
                {
                    "num": [fraction_str(x) for x in c.num.coeffs],
                    "den": [fraction_str(x) for x in c.den.coeffs],
                }
            )
    return {"var": op.var, "coeffs": coeffs}


def operator_from_json(data: dict) -> DiffOperator:
    if not isinstance(data, dict) or "coeffs" not in data:
        raise InvalidInputError("operator JSON must have a 'coeffs' field")
    var = data.get("var", "z")
    coeffs = []
    for entry in data["coeffs"]:
        if isinstance(entry, dict):
            num = Polynomial([as_fraction(x) for x in entry.get("num", [])])
            den = Polynomial([as_fraction(x) for x in entry.get("den", [1])])
            coeffs.append(RationalFunction(num, den))
        else:
            coeffs.append(RationalFunction(Polynomial([as_fraction(x) for x in entry])))
    return DiffOperator(coeffs, var)


def operator_from_any(source, var: str = "z") -> DiffOperator:
    """Accept operator text, JSON dict, or an existing DiffOperator."""
    if isinstance(source, DiffOperator):
        return source
    if isinstance(source, dict):
        return operator_from_json(source)
    if isinstance(source, str):
        return parse_operator(source, var=var)
    raise InvalidInputError(f"cannot interpret {type(source).__name__} as an operator")
