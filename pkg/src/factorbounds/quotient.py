"""Arithmetic in simple quotient rings Q[x]/(p).

Used for local analysis at an algebraic singular point: the Galois orbit of
the roots of a monic squarefree factor p of the leading coefficient is
handled as a single point with coefficients in Q[x]/(p).  The modulus is only
assumed squarefree; if an inversion hits a zero divisor, a
``ReducibleModulusError`` carries a nontrivial factor of p so the caller can
split the orbit and retry.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInputError, ReducibleModulusError
from .polynomials import P_ONE, Polynomial, as_fraction, poly_xgcd, resultant


class QuotientElement:
    """Residue class in Q[x]/(modulus); the residue is kept reduced."""

    __slots__ = ("modulus", "residue")

    def __init__(self, residue, modulus: Polynomial):
        if modulus.degree < 1:
            raise InvalidInputError("quotient modulus must be nonconstant")
        if not isinstance(residue, Polynomial):
            residue = (
                Polynomial(residue)
                if isinstance(residue, (list, tuple))
                else Polynomial.constant(as_fraction(residue))
            )
        self.modulus = modulus.monic()
        self.residue = residue % self.modulus

    @classmethod
    def generator(cls, modulus: Polynomial) -> "QuotientElement":
        return cls(Polynomial.variable(), modulus)

    def __bool__(self) -> bool:
        return bool(self.residue)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuotientElement(other, self.modulus)
        return (
            isinstance(other, QuotientElement)
            and self.modulus == other.modulus
            and self.residue == other.residue
        )

    def __hash__(self):
        return hash((self.modulus, self.residue))

    def _coerce(self, other) -> "QuotientElement":
        if isinstance(other, QuotientElement):
            if other.modulus != self.modulus:
                raise InvalidInputError("mixed quotient moduli")
            return other
        return QuotientElement(other, self.modulus)

    def __add__(self, other) -> "QuotientElement":
        other = self._coerce(other)
        return QuotientElement(self.residue + other.residue, self.modulus)

    __radd__ = __add__

    def __neg__(self) -> "QuotientElement":
        return QuotientElement(-self.residue, self.modulus)

    def __sub__(self, other) -> "QuotientElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QuotientElement":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "QuotientElement":
        other = self._coerce(other)
        return QuotientElement(self.residue * other.residue, self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "QuotientElement":
        if not self.residue:
            raise InvalidInputError("inverting zero in a quotient ring")
        g, s, _ = poly_xgcd(self.residue, self.modulus)
        if g.degree > 0:
            raise ReducibleModulusError("zero divisor exposes a modulus factor", factor=g)
        return QuotientElement(s.scale(1 / g[0]), self.modulus)

    def __truediv__(self, other) -> "QuotientElement":
        return self * self._coerce(other).inverse()

    def norm(self) -> Fraction:
        """Product of the residue's values at all roots of the modulus."""
        if not self.residue:
            return Fraction(0)
        return resultant(self.modulus, self.residue)

    def trace(self) -> Fraction:
        """Sum of the residue's values at all roots of the modulus, read off
        the trace of the multiplication-by-residue matrix."""
        d = self.modulus.degree
        total = Fraction(0)
        for i in range(d):
            col = (self.residue * Polynomial.monomial(i)) % self.modulus
            total += col[i]
        return total

    def __repr__(self) -> str:
        return f"QuotientElement({self.residue.format()} mod {self.modulus.format()})"


def q_poly(coeffs, modulus: Polynomial) -> list[QuotientElement]:
    """Polynomial over Q[x]/(p) as a coefficient list (ascending, trimmed)."""
    out = [c if isinstance(c, QuotientElement) else QuotientElement(c, modulus) for c in coeffs]
    while out and not out[-1]:
        out.pop()
    return out


def q_poly_eval(coeffs: list[QuotientElement], value) -> QuotientElement:
    if not coeffs:
        raise InvalidInputError("evaluating an empty quotient polynomial")
    acc = None
    for c in reversed(coeffs):
        acc = c if acc is None else acc * value + c
    return acc


def q_poly_deflate(coeffs: list[QuotientElement], root: Fraction):
    """Synthetic division of a quotient-coefficient polynomial by (t - root);
    returns (quotient coefficients, remainder element)."""
    modulus = coeffs[0].modulus
    acc = QuotientElement(0, modulus)
    out: list[QuotientElement] = []
    for c in reversed(coeffs):
        acc = acc * root + c
        out.append(acc)
    rem = out.pop()
    out.reverse()
    return out, rem


def taylor_at(poly: Polynomial, point: QuotientElement, count: int) -> list[QuotientElement]:
    """First ``count`` Taylor coefficients of a Q-polynomial around an
    algebraic point, computed by repeated synthetic division."""
    modulus = point.modulus
    work = q_poly(list(poly.coeffs), modulus)
    out: list[QuotientElement] = []
    for _ in range(count):
        if not work:
            out.append(QuotientElement(0, modulus))
            continue
        # divide by (x - point): Horner from the top, remainder is the value
        acc = QuotientElement(0, modulus)
        next_work: list[QuotientElement] = []
        for c in reversed(work):
            acc = acc * point + c
            next_work.append(acc)
        rem = next_work.pop()
        next_work.reverse()
        out.append(rem)
        work = next_work
        while work and not work[-1]:
            work.pop()
    return out


def element_matrix(elem: QuotientElement) -> list[list[Fraction]]:
    """Matrix of multiplication by ``elem`` in the power basis, column-major
    convenience for blow-ups of quotient-linear systems over Q."""
    d = elem.modulus.degree
    cols = []
    for i in range(d):
        col = (elem.residue * Polynomial.monomial(i)) % elem.modulus
        cols.append([col[row] for row in range(d)])
    return [[cols[j][i] for j in range(d)] for i in range(d)]
