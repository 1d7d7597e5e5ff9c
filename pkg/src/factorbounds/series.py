"""Taylor-coefficient recurrences and the minimal-annihilator search.

An operator with polynomial coefficients induces a linear recurrence on the
Taylor coefficients of any power-series solution; this module converts
operators to recurrences, extends coefficient streams, applies operators to
truncated series, and searches for the lowest-order right factor
annihilating a given series.

The search sweeps candidate orders r = 1..m.  For each r it caps the
coefficient degrees of the candidate by the census-derived degree bound
(or a user override), picks the valuation cutoff N that certifies a
truncated zero is a true zero, and solves the homogeneous linear system
demanding that coefficients 0..N of ``sum P_j f^(j)`` vanish.  The first
order with a nonzero kernel yields the minimal annihilator, which is then
cross-checked by right division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import bound_from_operator, valuation_bound
from .errors import (
    InconsistencyError,
    InvalidInputError,
    NeedsMoreInitialTermsError,
)
from .linalg import nullspace
from .operators import DiffOperator
from .polynomials import Polynomial, RationalFunction, as_fraction
from .singularities import global_census


@dataclass(frozen=True)
class RecurrenceOperator:
    """Linear recurrence sum_s Q_s(n) u_{n+s} = 0 on Taylor coefficients,
    keyed by shift; ``terms[s]`` is the polynomial coefficient of u_{n+s}."""

    terms: tuple[tuple[int, Polynomial], ...]  # sorted by shift, nonzero

    @property
    def shift_range(self) -> tuple[int, int]:
        return self.terms[0][0], self.terms[-1][0]

    def leading(self) -> tuple[int, Polynomial]:
        return self.terms[-1]

    def coefficient(self, s: int) -> Polynomial:
        for shift, poly in self.terms:
            if shift == s:
                return poly
        return Polynomial()

    def format(self) -> str:
        parts = []
        for s, poly in reversed(self.terms):
            arg = "n" if s == 0 else (f"n+{s}" if s > 0 else f"n-{-s}")
            c = poly.format("n")
            cs = c if ("+" not in c and "-" not in c.lstrip("-") and "*" not in c and c.lstrip("-").isalnum()) else f"({c})"
            parts.append(f"{cs}*u({arg})")
        return " + ".join(parts).replace("+ (-", "- (").replace("+ -", "- ") + " = 0"


def operator_to_recurrence(op: DiffOperator) -> RecurrenceOperator:
    """Recurrence satisfied by the Taylor coefficients at 0 of any
    power-series solution of the operator (denominators cleared first)."""
    if not op:
        raise InvalidInputError("recurrence of the zero operator")
    polys = op.polynomial_form()
    from .operators import falling_factorial

    acc: dict[int, Polynomial] = {}
    for j, p in enumerate(polys):
        if not p:
            continue
        for i, c in enumerate(p.coeffs):
            if c == 0:
                continue
            s = j - i
            term = falling_factorial(j).shift(s).scale(c)
            acc[s] = acc.get(s, Polynomial()) + term
    terms = tuple(sorted((s, poly) for s, poly in acc.items() if poly))
    if not terms:
        raise InvalidInputError("operator induced an empty recurrence")
    return RecurrenceOperator(terms)


class SeriesContext:
    """A growable stream of exact Taylor coefficients at 0, either given
    explicitly or extended on demand through an annihilating operator's
    recurrence."""

    def __init__(self, coefficients, recurrence: RecurrenceOperator | None = None):
        self.coefficients: list[Fraction] = [as_fraction(c) for c in coefficients]
        self.recurrence = recurrence

    @classmethod
    def from_list(cls, coefficients) -> "SeriesContext":
        return cls(coefficients)

    @classmethod
    def from_operator(cls, op: DiffOperator, initial) -> "SeriesContext":
        return cls(initial, operator_to_recurrence(op))

    def known(self) -> int:
        return len(self.coefficients)

    def coefficient(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n >= len(self.coefficients):
            raise NeedsMoreInitialTermsError(
                f"coefficient {n} is not available", blocking_index=n
            )
        return self.coefficients[n]


def extend_coefficients(ctx: SeriesContext, upto: int) -> SeriesContext:
    """Make coefficients 0..upto available, extending through the recurrence.
    Raises NeedsMoreInitialTermsError (with the blocking index) if a needed
    coefficient is underdetermined: either below the recurrence's top shift
    or at a nonnegative root of its leading coefficient."""
    if ctx.recurrence is None:
        if len(ctx.coefficients) <= upto:
            raise NeedsMoreInitialTermsError(
                f"coefficient {len(ctx.coefficients)} is not determined "
                "(no recurrence attached)",
                blocking_index=len(ctx.coefficients),
            )
        return ctx
    s_max, lead = ctx.recurrence.leading()
    while len(ctx.coefficients) <= upto:
        t = len(ctx.coefficients)
        n = t - s_max
        if n < 0 or lead(Fraction(n)) == 0:
            raise NeedsMoreInitialTermsError(
                f"coefficient {t} is underdetermined by the recurrence; "
                "supply more initial terms",
                blocking_index=t,
            )
        total = Fraction(0)
        for s, poly in ctx.recurrence.terms[:-1]:
            idx = n + s
            if 0 <= idx < t:
                total += poly(Fraction(n)) * ctx.coefficients[idx]
        ctx.coefficients.append(-total / lead(Fraction(n)))
    return ctx


def apply_operator(op: DiffOperator, ctx: SeriesContext, upto: int) -> list[Fraction]:
    """Taylor coefficients 0..upto of the operator applied to the series.
    Coefficients of the operator must be expandable at 0 (no poles there);
    only the series coefficients actually reachable in the output window are
    required (a coefficient valuation v_j lowers the demand of the D^j term
    by v_j)."""
    if not op:
        return [Fraction(0)] * (upto + 1)
    needed = -1
    for j, c in enumerate(op.coeffs):
        if not c:
            continue
        if c.den(Fraction(0)) == 0:
            raise InvalidInputError(
                "operator coefficient has a pole at 0; clear denominators first"
            )
        needed = max(needed, upto - c.valuation_at_zero() + j)
    if needed >= 0:
        extend_coefficients(ctx, needed)
    u = ctx.coefficients
    out = [Fraction(0)] * (upto + 1)
    for j, c in enumerate(op.coeffs):
        if not c:
            continue
        v = c.valuation_at_zero()
        cseries = c.series_coefficients(v, max(upto + 1 - v, 0))
        # f^(j) has coefficients (n+1)...(n+j) u_{n+j}
        for k in range(upto + 1):
            acc = Fraction(0)
            for i, ci in enumerate(cseries):
                n = k - v - i
                if n < 0:
                    break
                if ci:
                    acc += ci * u[n + j] * _rising(n + 1, j)
            out[k] += acc
    return out


def _rising(start: int, count: int) -> Fraction:
    prod = 1
    for i in range(count):
        prod *= start + i
    return Fraction(prod)


@dataclass(frozen=True)
class MinimizationResult:
    found: bool
    operator: DiffOperator | None
    order: int | None
    degree_cap: int | None
    cutoff: int | None
    E_used: Fraction | None
    certificate_zero_through: int | None
    division_remainder_zero: bool | None
    orders_tried: tuple[int, ...] = ()


def minimize(
    L: DiffOperator,
    initial,
    degree_cap: int | None = None,
    E_override=None,
    conservative_orbits: bool = True,
) -> MinimizationResult:
    """Search for the lowest-order monic operator annihilating the series
    determined by ``initial`` and L.  The degree cap defaults to the
    census-derived bound at each candidate order; irregular operators then
    need ``E_override``.  The result is cross-checked as a right factor of L.
    """
    if not L:
        raise InvalidInputError("minimization requires a nonzero operator")
    m = L.order
    if m < 1:
        raise InvalidInputError("minimization requires an operator of positive order")
    polys = L.polynomial_form()
    q = max(p.degree for p in polys if p)
    if E_override is not None:
        e_used = as_fraction(E_override)
        if e_used < 0:
            raise InvalidInputError("exponent bound override must be nonnegative")
    else:
        census = global_census(L, conservative_orbits=conservative_orbits)
        if census.E_fuchsian is None:
            from .errors import NeedsExponentBoundError

            raise NeedsExponentBoundError(
                "operator has an irregular point; supply an exponent bound override"
            )
        e_used = census.E_fuchsian
    sweep = None
    if degree_cap is None:
        sweep = bound_from_operator(
            L, E_override=E_override, conservative_orbits=conservative_orbits
        )
    ctx = SeriesContext.from_operator(L, initial)
    checked_through = -1
    tried = []
    for r in range(1, m + 1):
        cap = degree_cap if degree_cap is not None else sweep.best_cap(r, "strict")
        cutoff = valuation_bound(r, cap, q, m, e_used)
        extend_coefficients(ctx, cutoff + m)
        if checked_through < cutoff:
            residual = apply_operator(L, ctx, cutoff)
            if any(residual):
                first_bad = next(i for i, v in enumerate(residual) if v)
                raise InconsistencyError(
                    "the initial coefficients are not annihilated by the operator "
                    f"(first nonzero residual at index {first_bad})",
                    index=first_bad,
                )
            checked_through = cutoff
        tried.append(r)
        u = ctx.coefficients
        ncols = (r + 1) * (cap + 1)
        rows = []
        for k in range(cutoff + 1):
            row = [Fraction(0)] * ncols
            nonzero = False
            for j in range(r + 1):
                for d in range(cap + 1):
                    n = k - d
                    if n < 0:
                        continue
                    val = u[n + j] * _rising(n + 1, j)
                    if val:
                        row[j * (cap + 1) + d] = val
                        nonzero = True
            if nonzero:
                rows.append(row)
        kernel = (
            nullspace(rows, ncols=ncols)
            if rows
            else nullspace([], ncols=ncols)
        )
        if not kernel:
            continue
        vec = kernel[0]
        coeff_polys = [
            Polynomial(vec[j * (cap + 1) : (j + 1) * (cap + 1)]) for j in range(r + 1)
        ]
        candidate = DiffOperator.from_polynomials(coeff_polys, L.var)
        candidate = candidate.normalize_monic()
        _, rem = L.right_divmod(candidate)
        if rem:
            raise InconsistencyError(
                "annihilator certificate failed right-division cross-check; "
                "the degree cap is too small for the true minimal operator",
                order=candidate.order,
            )
        return MinimizationResult(
            found=True,
            operator=candidate,
            order=candidate.order,
            degree_cap=cap,
            cutoff=cutoff,
            E_used=e_used,
            certificate_zero_through=cutoff,
            division_remainder_zero=True,
            orders_tried=tuple(tried),
        )
    raise InconsistencyError(
        "no annihilator found up to the operator's own order; "
        "the series is not annihilated at the checked precision or the "
        "degree cap is too small",
        orders_tried=tuple(tried),
    )
