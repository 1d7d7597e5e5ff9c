"""Differential operators with rational-function coefficients.

An operator is stored in derivation form: a tuple of rational-function
coefficients ``c_0 .. c_mu`` (ascending derivative order, leading coefficient
nonzero) acting as ``sum c_j(z) D^j`` with ``D = d/dz``.  The polynomial form
(coprime polynomial coefficients) and the monic reduced form are derived
views, computed on demand, because different analyses read off different
normalizations.

Multiplication is composition, so the commutation rule ``D z = z D + 1``
holds; ``right_divmod`` is the right Euclidean division certifying right
factors by a zero remainder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZeroError, InvalidInputError
from .polynomials import (
    P_ONE,
    Polynomial,
    RationalFunction,
    as_fraction,
    poly_gcd,
    poly_lcm,
)


class _Infinity:
    """Marker for the point at infinity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Infinity()


@lru_cache(maxsize=None)
def falling_factorial(j: int) -> Polynomial:
    """x (x-1) ... (x-j+1); the theta-expansion of D^j is z^-j times this."""
    p = P_ONE
    for i in range(j):
        p = p * Polynomial([-i, 1])
    return p


def _coerce_rf(c) -> RationalFunction:
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, Polynomial):
        return RationalFunction(c)
    return RationalFunction.from_fraction(as_fraction(c))


class DiffOperator:
    """Linear differential operator sum c_j(z) D^j over Q(z)."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "z"):
        cs = [_coerce_rf(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[RationalFunction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def zero(cls, var: str = "z") -> "DiffOperator":
        return cls((), var)

    @classmethod
    def derivation(cls, var: str = "z") -> "DiffOperator":
        return cls([RationalFunction(Polynomial()), RationalFunction(P_ONE)], var)

    @classmethod
    def from_polynomials(cls, polys, var: str = "z") -> "DiffOperator":
        return cls([RationalFunction(p if isinstance(p, Polynomial) else Polynomial(p)) for p in polys], var)

    @classmethod
    def monomial(cls, coeff, order: int, var: str = "z") -> "DiffOperator":
        c = _coerce_rf(coeff)
        if not c:
            return cls.zero(var)
        return cls([RationalFunction(Polynomial())] * order + [c], var)

    # -- structure -----------------------------------------------------------

    @property
    def order(self) -> int:
        """Order of the operator; -1 for the zero operator."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, j: int) -> RationalFunction:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return RationalFunction(Polynomial())

    def leading_coefficient(self) -> RationalFunction:
        if not self.coeffs:
            raise InvalidInputError("zero operator has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiffOperator)
            and self.coeffs == other.coeffs
            and self.var == other.var
        )

    def __hash__(self):
        return hash((self.coeffs, self.var))

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return DiffOperator(out, self.var)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator([-c for c in self.coeffs], self.var)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def scale(self, c) -> "DiffOperator":
        c = _coerce_rf(c)
        return DiffOperator([c * x for x in self.coeffs], self.var)

    def __mul__(self, other) -> "DiffOperator":
        """Composition: (self * other)(y) = self(other(y))."""
        if isinstance(other, (int, Fraction, RationalFunction, Polynomial)):
            return self.scale(other)
        out: list[RationalFunction] = [
            RationalFunction(Polynomial())
            for _ in range(len(self.coeffs) + len(other.coeffs))
        ]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                # D^i (b D^j) = sum_k C(i, k) b^(k) D^(i+j-k)
                deriv = b
                for k in range(i + 1):
                    coef = a * deriv * math.comb(i, k)
                    out[i + j - k] = out[i + j - k] + coef
                    if k < i:
                        deriv = deriv.derivative()
        return DiffOperator(out, self.var)

    def __rmul__(self, other) -> "DiffOperator":
        return self.scale(other)

    def __pow__(self, n: int) -> "DiffOperator":
        if n < 0:
            raise InvalidInputError("negative operator power")
        result = DiffOperator([RationalFunction(P_ONE)], self.var)
        for _ in range(n):
            result = result * self
        return result

    # -- normal forms -----------------------------------------------------------

    def normalize_monic(self) -> "DiffOperator":
        """Divide through by the leading coefficient."""
        if not self:
            raise InvalidInputError("cannot normalize the zero operator")
        lead = self.coeffs[-1]
        return DiffOperator([c / lead for c in self.coeffs], self.var)

    def polynomial_form(self) -> list[Polynomial]:
        """Clear denominators to a coprime family of polynomial coefficients,
        scaled to primitive integers with a positive leading coefficient on
        the top-order polynomial."""
        if not self:
            raise InvalidInputError("zero operator has no polynomial form")
        return list(_polynomial_form_cached(self))

    def _polynomial_form_impl(self) -> list[Polynomial]:
        den = P_ONE
        for c in self.coeffs:
            den = poly_lcm(den, c.den)
        polys = [c.num * den.exact_div(c.den) if c else Polynomial() for c in self.coeffs]
        fam = Polynomial()
        for p in polys:
            fam = poly_gcd(fam, p) if fam else (p.monic() if p else fam)
        if fam and fam.degree > 0:
            polys = [p.exact_div(fam) if p else p for p in polys]
        # joint integer normalization
        all_coeffs = [c for p in polys for c in p.coeffs]
        lcm_den = math.lcm(*(c.denominator for c in all_coeffs)) if all_coeffs else 1
        gcd_num = math.gcd(*(abs(int(c * lcm_den)) for c in all_coeffs)) if all_coeffs else 1
        scale = Fraction(lcm_den, gcd_num)
        if polys[-1].leading_coefficient() * scale < 0:
            scale = -scale
        return [p.scale(scale) for p in polys]

    def monic_form(self) -> tuple[list[Polynomial], Polynomial]:
        """Monic reduced form: numerators U_0..U_mu over the minimal common
        monic denominator V (so U_mu = V)."""
        nums, den = _monic_form_cached(self)
        return list(nums), den

    def _monic_form_impl(self) -> tuple[list[Polynomial], Polynomial]:
        monic = self.normalize_monic()
        den = P_ONE
        for c in monic.coeffs:
            den = poly_lcm(den, c.den)
        nums = [c.num * den.exact_div(c.den) if c else Polynomial() for c in monic.coeffs]
        return nums, den

    def degree_profile(self) -> "DegreeProfile":
        """Order, degree of the monic reduced form, and denominator degree."""
        if not self:
            raise InvalidInputError("zero operator has no degree profile")
        nums, den = self.monic_form()
        candidates = [den.degree] + [p.degree for p in nums if p]
        return DegreeProfile(
            order=self.order,
            degree_z=max(candidates),
            denominator_degree=den.degree,
        )

    def height(self) -> int:
        """Max absolute value of the primitive integer coefficients of the
        polynomial form (naive height)."""
        polys = self.polynomial_form()
        return max(abs(int(c)) for p in polys for c in p.coeffs if p)

    # -- transforms -----------------------------------------------------------

    def adjoint(self) -> "DiffOperator":
        """Formal adjoint sum (-D)^j . a_j; an involutive anti-homomorphism."""
        if not self:
            return self
        result = DiffOperator.zero(self.var)
        d = DiffOperator.derivation(self.var)
        for j, a in enumerate(self.coeffs):
            if not a:
                continue
            term = (d**j) * DiffOperator([a], self.var)
            if j % 2:
                term = -term
            result = result + term
        return result

    def shift_point(self, rho) -> "DiffOperator":
        """Substitute z -> z + rho, moving local analysis at rho to 0."""
        rho = as_fraction(rho)
        if rho == 0:
            return self
        return _shift_point_cached(self, rho)

    def invert_variable(self) -> "DiffOperator":
        """Image under z -> 1/z, D -> -z^2 D (theta flips sign)."""
        if not self:
            return self
        return _invert_variable_cached(self)

    def _invert_variable_impl(self) -> "DiffOperator":
        t = DiffOperator([RationalFunction(Polynomial()), RationalFunction(Polynomial([0, 0, -1]))], self.var)
        result = DiffOperator.zero(self.var)
        t_pow = DiffOperator([RationalFunction(P_ONE)], self.var)
        for j, c in enumerate(self.coeffs):
            if j > 0:
                t_pow = t_pow * t
            if c:
                result = result + DiffOperator([c.substitute_inverse()], self.var) * t_pow
        return result

    # -- local expansion --------------------------------------------------------

    def theta_coefficients(self) -> list[RationalFunction]:
        """Exact rational functions b_0..b_mu with
        self = sum_k b_k(z) theta^k, theta = z D (normal form with the
        function coefficients on the left)."""
        if not self:
            return []
        mu = self.order
        out = [RationalFunction(Polynomial()) for _ in range(mu + 1)]
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            zj = RationalFunction(P_ONE, Polynomial.monomial(j))
            base = c * zj
            for k, s in enumerate(falling_factorial(j).coeffs):
                if s:
                    out[k] = out[k] + base * s
        return out

    def apply_to_polynomial(self, y: Polynomial) -> Polynomial:
        """Exact image of a polynomial under the polynomial form of the
        operator (denominators cleared first, which preserves kernels)."""
        polys = self.polynomial_form()
        result = Polynomial()
        deriv = y
        for j, p in enumerate(polys):
            if j > 0:
                deriv = deriv.derivative()
            if p and deriv:
                result = result + p * deriv
        return result

    # -- division -----------------------------------------------------------

    def right_divmod(self, divisor: "DiffOperator") -> tuple["DiffOperator", "DiffOperator"]:
        """Right Euclidean division: self = quotient * divisor + remainder
        with order(remainder) < order(divisor).  A zero remainder certifies
        that the divisor is a right factor."""
        if not divisor:
            raise DivisionByZeroError("right division by the zero operator")
        quotient = DiffOperator.zero(self.var)
        rem = self
        while rem and rem.order >= divisor.order:
            k = rem.order - divisor.order
            c = rem.leading_coefficient() / divisor.leading_coefficient()
            t = DiffOperator.monomial(c, k, self.var)
            quotient = quotient + t
            rem = rem - t * divisor
        return quotient, rem

    def is_right_factor(self, candidate: "DiffOperator") -> bool:
        return not self.right_divmod(candidate)[1]

    # -- rendering -----------------------------------------------------------

    def format(self) -> str:
        if not self:
            return "0"
        parts = []
        for j in range(self.order, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            sign, body = _format_term(c, j, self.var)
            if not parts:
                parts.append(body if sign > 0 else "-" + body)
            else:
                parts.append((" + " if sign > 0 else " - ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"DiffOperator({self.format()})"


def _format_term(c: RationalFunction, j: int, var: str) -> tuple[int, str]:
    sign = 1
    if c.num.leading_coefficient() < 0:
        sign = -1
        c = -c
    dsym = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
    cs = c.format(var)
    if not dsym:
        return sign, cs if _is_atomic(cs) else f"({cs})"
    if c == RationalFunction(P_ONE):
        return sign, dsym
    coef = cs if _is_atomic(cs) else f"({cs})"
    return sign, f"{coef}*{dsym}"


def _is_atomic(s: str) -> bool:
    if any(op in s for op in (" + ", " - ", "/")):
        return False
    return not (s.startswith("-") or "*" in s)


# Operators are immutable, so the derived normal forms and variable
# transforms are memoized; local analysis revisits them constantly.
@lru_cache(maxsize=2048)
def _polynomial_form_cached(op: DiffOperator) -> tuple[Polynomial, ...]:
    return tuple(op._polynomial_form_impl())


@lru_cache(maxsize=2048)
def _monic_form_cached(op: DiffOperator) -> tuple[tuple[Polynomial, ...], Polynomial]:
    nums, den = op._monic_form_impl()
    return tuple(nums), den


@lru_cache(maxsize=1024)
def _invert_variable_cached(op: DiffOperator) -> DiffOperator:
    return op._invert_variable_impl()


@lru_cache(maxsize=4096)
def _shift_point_cached(op: DiffOperator, rho: Fraction) -> DiffOperator:
    return DiffOperator([c.shift(rho) for c in op.coeffs], op.var)


@dataclass(frozen=True)
class DegreeProfile:
    """Size data of the monic reduced form."""

    order: int
    degree_z: int
    denominator_degree: int


@dataclass(frozen=True)
class ThetaEntry:
    valuation: int
    window: tuple[Fraction, ...]


@dataclass(frozen=True)
class ThetaForm:
    """Truncated theta-expansion at a point: entry k is the Laurent window of
    the coefficient of theta^k, or None when that coefficient vanishes."""

    point: object  # Fraction or INF
    window: int
    entries: tuple[ThetaEntry | None, ...]
    exact: tuple[RationalFunction, ...]


def to_theta_form(op: DiffOperator, point, window: int) -> ThetaForm:
    """Exact theta-expansion of the operator at a rational point or infinity,
    with each Laurent coefficient truncated to ``window`` terms above its
    valuation."""
    if window < 1:
        raise InvalidInputError("theta window must be at least 1")
    if not op:
        raise InvalidInputError("theta form of the zero operator")
    if point is INF:
        local = op.invert_variable()
    else:
        local = op.shift_point(as_fraction(point))
    exact = local.theta_coefficients()
    entries: list[ThetaEntry | None] = []
    for b in exact:
        if not b:
            entries.append(None)
            continue
        v = b.valuation_at_zero()
        entries.append(ThetaEntry(v, tuple(b.series_coefficients(v, window))))
    return ThetaForm(point=point if point is INF else as_fraction(point), window=window, entries=tuple(entries), exact=tuple(exact))


def theta_to_operator(entries, var: str = "z") -> DiffOperator:
    """Rebuild an operator from exact theta coefficients (inverse of
    ``DiffOperator.theta_coefficients``)."""
    theta = DiffOperator([RationalFunction(Polynomial()), RationalFunction(Polynomial.variable())], var)
    result = DiffOperator.zero(var)
    theta_pow = DiffOperator([RationalFunction(P_ONE)], var)
    for k, b in enumerate(entries):
        if k > 0:
            theta_pow = theta_pow * theta
        b = _coerce_rf(b)
        if b:
            result = result + DiffOperator([b], var) * theta_pow
    return result
