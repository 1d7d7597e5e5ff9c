"""Exact univariate polynomial and rational-function arithmetic over Q.

Coefficients are ``fractions.Fraction`` throughout; polynomials are dense
lists in ascending degree with no trailing zeros, so the zero polynomial is
the empty coefficient list and ``degree == -1`` for it.  Degrees in this
package stay small, which keeps the dense representation both simple and
fast.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` / ``"p"`` strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not a rational literal: {x!r}") from exc
    raise InvalidInputError(f"cannot interpret {type(x).__name__} as a rational")


def big_int_str(n: int) -> str:
    """Exact decimal rendering, raising the interpreter's int-to-str digit
    guard when a report legitimately contains a huge exact integer."""
    try:
        return str(n)
    except ValueError:
        import sys

        digits = int(n.bit_length() * 0.30103) + 10
        sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), digits))
        return str(n)


def fraction_str(x: Fraction) -> str:
    """Render exactly, as ``p`` or ``p/q``."""
    x = Fraction(x)
    if x.denominator == 1:
        return big_int_str(x.numerator)
    return f"{big_int_str(x.numerator)}/{big_int_str(x.denominator)}"


class Polynomial:
    """Dense univariate polynomial over Q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([as_fraction(c)])

    @classmethod
    def variable(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        c = as_fraction(c)
        if c == 0:
            return cls()
        return cls([0] * degree + [c])

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise InvalidInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Polynomial(out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = as_fraction(c)
        return Polynomial([c * x for x in self.coeffs])

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise InvalidInputError("negative polynomial power")
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        if not other:
            raise InvalidInputError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        lc = other.leading_coefficient()
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] / lc
            if c:
                q[i - d] = c
                for j, oc in enumerate(other.coeffs):
                    rem[i - d + j] -= c * oc
        return Polynomial(q), Polynomial(rem[:d] if d > 0 else [])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise InvalidInputError("polynomial division is not exact")
        return q

    # -- calculus and evaluation --------------------------------------------

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate by Horner's rule.  Works for any value supporting
        multiplication by itself and addition with Fraction (e.g. quotient
        ring elements)."""
        result = None
        for c in reversed(self.coeffs):
            result = c if result is None else result * x + c
        if result is None:
            return Fraction(0)
        return result

    def monic(self) -> "Polynomial":
        if not self:
            raise InvalidInputError("cannot normalize the zero polynomial")
        lc = self.leading_coefficient()
        return self if lc == 1 else self.scale(1 / lc)

    def shift(self, a) -> "Polynomial":
        """Taylor shift: returns p(x + a)."""
        a = as_fraction(a)
        if a == 0:
            return self
        result = Polynomial()
        za = Polynomial([a, 1])
        for c in reversed(self.coeffs):
            result = result * za + Polynomial.constant(c)
        return result

    def reversed_coeffs(self, n: int | None = None) -> "Polynomial":
        """Returns x^n * p(1/x) for n >= deg(p) (default n = deg(p))."""
        if not self:
            return Polynomial()
        if n is None:
            n = self.degree
        if n < self.degree:
            raise InvalidInputError("reversal order below degree")
        out = [Fraction(0)] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return Polynomial(out)

    def valuation_at_zero(self) -> int:
        if not self:
            raise InvalidInputError("valuation of the zero polynomial")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unreachable")

    # -- rendering -----------------------------------------------------------

    def format(self, var: str = "x") -> str:
        if not self:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = fraction_str(abs(c))
            else:
                mag = abs(c)
                head = "" if mag == 1 else fraction_str(mag) + "*"
                term = head + (var if i == 1 else f"{var}^{i}")
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append((" + " if c > 0 else " - ") + term)
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"


P_ZERO = Polynomial()
P_ONE = Polynomial([1])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if not a or not b:
        return Polynomial()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def poly_xgcd(a: Polynomial, b: Polynomial):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = P_ONE, P_ZERO
    t0, t1 = P_ZERO, P_ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        lc = r0.leading_coefficient()
        return r0.scale(1 / lc), s0.scale(1 / lc), t0.scale(1 / lc)
    return r0, s0, t0


def squarefree_factorization(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm.  Returns monic pairwise-coprime squarefree factors
    with multiplicities whose weighted product rebuilds p up to a scalar.
    """
    if not p:
        raise InvalidInputError("squarefree factorization of the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    out: list[tuple[Polynomial, int]] = []
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return [(p, 1)]
    w = p.exact_div(g)
    y = p.derivative().exact_div(g)
    k = 1
    while w.degree > 0:
        z = y - w.derivative()
        f = poly_gcd(w, z)
        if f.degree > 0:
            out.append((f.monic(), k))
        w = w.exact_div(f)
        y = z.exact_div(f)
        k += 1
    return out


def integer_primitive(p: Polynomial) -> tuple[list[int], Fraction]:
    """Scale p to primitive integer coefficients with a positive leading
    coefficient; returns (integer coefficients, applied scale factor)."""
    if not p:
        return [], Fraction(1)
    den = math.lcm(*(c.denominator for c in p.coeffs))
    nums = [int(c * den) for c in p.coeffs]
    g = math.gcd(*(abs(n) for n in nums))
    scale = Fraction(den, g)
    ints = [n // g for n in nums]
    if ints[-1] < 0:
        ints = [-n for n in ints]
        scale = -scale
    return ints, scale


def _divisors(n: int, trial_limit: int = 1_000_000) -> list[int]:
    """Positive divisors of |n|.  Complete whenever the part of |n| left
    unfactored by trial division up to ``trial_limit`` is 1 or prime; the
    cofactor itself is always included so small-root searches stay sound."""
    n = abs(n)
    if n == 0:
        return []
    factors: dict[int, int] = {}
    m = n
    for d in range(2, trial_limit + 1):
        if d * d > m:
            break
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    divs = [1]
    for prime, mult in factors.items():
        divs = [d * prime**e for d in divs for e in range(mult + 1)]
    return sorted(set(divs))


def rational_roots(p: Polynomial) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicities, sorted.  The deflated cofactor
    has no rational roots (see ``_divisors`` for the completeness caveat on
    astronomically large coefficients)."""
    if not p:
        raise InvalidInputError("rational roots of the zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    v = p.valuation_at_zero() if p.degree >= 0 and p else 0
    if p.degree == 0:
        return []
    if v > 0:
        roots.append((Fraction(0), v))
        p = Polynomial(p.coeffs[v:])
    if p.degree == 0:
        return roots
    ints, _ = integer_primitive(p)
    num_divs = _divisors(ints[0])
    den_divs = _divisors(ints[-1])
    candidates = sorted({Fraction(s * a, b) for a in num_divs for b in den_divs for s in (1, -1)})
    for cand in candidates:
        mult = 0
        while p.degree > 0 and p(cand) == 0:
            p = p.exact_div(Polynomial([-cand, 1]))
            mult += 1
        if mult:
            roots.append((cand, mult))
    return sorted(roots)


def cauchy_root_bound(p: Polynomial) -> Fraction:
    """Cauchy's bound: every complex root of p has modulus at most
    1 + max_i |a_i / a_n|."""
    if p.degree < 1:
        raise InvalidInputError("root bound requires degree >= 1")
    lc = p.leading_coefficient()
    return 1 + max(abs(c / lc) for c in p.coeffs[:-1])


def resultant(p: Polynomial, q: Polynomial) -> Fraction:
    """Resultant of p and q, normalized so that for monic inputs it equals
    the product of all root differences prod (alpha_i - beta_j).  Zero exactly
    when p and q share a complex root."""
    if not p or not q:
        raise InvalidInputError("resultant of the zero polynomial")
    return _resultant(p, q)


def _resultant(p: Polynomial, q: Polynomial) -> Fraction:
    if p.degree < q.degree:
        sign = -1 if (p.degree * q.degree) % 2 else 1
        return sign * _resultant(q, p)
    if q.degree == 0:
        return q.leading_coefficient() ** p.degree
    r = p % q
    if not r:
        return Fraction(0)
    sign = -1 if (p.degree * q.degree) % 2 else 1
    return sign * q.leading_coefficient() ** (p.degree - r.degree) * _resultant(q, r)


def factor_multiplicity(p: Polynomial, factor: Polynomial) -> int:
    """Largest k with factor^k dividing p."""
    if not p:
        raise InvalidInputError("multiplicity in the zero polynomial")
    if factor.degree < 1:
        raise InvalidInputError("multiplicity of a constant factor")
    k = 0
    while True:
        q, r = divmod(p, factor)
        if r:
            return k
        p = q
        k += 1


def interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Polynomial:
    """Lagrange interpolation through distinct sample points."""
    result = Polynomial()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = Polynomial([1])
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i != j:
                num = num * Polynomial([-xj, 1])
                den *= xi - xj
        result = result + num.scale(yi / den)
    return result


class RationalFunction:
    """Reduced fraction of polynomials; the denominator is monic and coprime
    to the numerator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num) if not isinstance(num, (list, tuple)) else Polynomial(num)
        if den is None:
            den = P_ONE
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(den) if not isinstance(den, (list, tuple)) else Polynomial(den)
        if not den:
            raise InvalidInputError("rational function with zero denominator")
        if not num:
            self.num, self.den = P_ZERO, P_ONE
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading_coefficient()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        self.num, self.den = num, den

    @classmethod
    def from_fraction(cls, c) -> "RationalFunction":
        return cls(Polynomial.constant(as_fraction(c)))

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __neg__(self) -> "RationalFunction":
        out = RationalFunction.__new__(RationalFunction)
        out.num, out.den = -self.num, self.den
        return out

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num.scale(other), self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __rmul__(self, other) -> "RationalFunction":
        return self * other

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not other:
            raise InvalidInputError("rational function division by zero")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def shift(self, a) -> "RationalFunction":
        return RationalFunction(self.num.shift(a), self.den.shift(a))

    def substitute_inverse(self) -> "RationalFunction":
        """Returns f(1/x) as a rational function."""
        if not self:
            return self
        n = max(self.num.degree, self.den.degree)
        return RationalFunction(self.num.reversed_coeffs(n), self.den.reversed_coeffs(n))

    def valuation_at_zero(self) -> int:
        if not self:
            raise InvalidInputError("valuation of the zero function")
        return self.num.valuation_at_zero() - self.den.valuation_at_zero()

    def series_coefficients(self, start: int, count: int) -> list[Fraction]:
        """Laurent coefficients of indices start .. start+count-1 at x = 0."""
        if not self:
            return [Fraction(0)] * count
        v = self.valuation_at_zero()
        nv = self.num.valuation_at_zero()
        dv = self.den.valuation_at_zero()
        num = list(self.num.coeffs[nv:])
        den = list(self.den.coeffs[dv:])
        # power series division: coefficients of (num/den) from index 0
        needed = start + count - v
        if needed <= 0:
            return [Fraction(0)] * count
        inv_lead = 1 / den[0]
        series: list[Fraction] = []
        for k in range(needed):
            acc = num[k] if k < len(num) else Fraction(0)
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * series[k - j]
            series.append(acc * inv_lead)
        out = []
        for idx in range(start, start + count):
            k = idx - v
            out.append(series[k] if 0 <= k < len(series) else Fraction(0))
        return out

    def coefficient_at(self, index: int) -> Fraction:
        return self.series_coefficients(index, 1)[0]

    def format(self, var: str = "x") -> str:
        num = self.num.format(var)
        if self.den.degree == 0:
            return num
        den = self.den.format(var)
        num_s = num if self.num.degree <= 0 and self.num[0] >= 0 else f"({num})"
        den_s = den if self.den.degree == 0 else f"({den})"
        return f"{num_s}/{den_s}"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RationalFunction({self.format()})"


RF_ZERO = RationalFunction(P_ZERO)
RF_ONE = RationalFunction(P_ONE)
