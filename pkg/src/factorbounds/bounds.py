"""Explicit degree and valuation bounds for monic right factors.

The central formula bounds the degree of a monic right factor of order r in
terms of four census quantities: E (largest modulus of local exponents at
infinity and the finite non-apparent singularities), N (largest Newton
polygon slope anywhere), and S (number of finite non-apparent
singularities):

    degree <= r^2 (S+1) E  +  r (N+1) S  +  r N  +  (1/2) r^2 (r-1) ((S+1)(N+1) - 2)

Three optional refinements tighten it:

* ``nminus1``: when N >= 1 the third addend drops to r (N - 1);
* ``sumE``: the factor (S+1) E in the first addend becomes the sum of the
  per-point largest exponent moduli instead of (S+1) times their maximum;
* ``minslopes``: the slope part (S+1) N inside the last addend becomes
  min((S+1) N, 2q + 1 - #finite singularities) when the polynomial degree q
  and the singularity count are known.

The same module houses the classical Fuchs relation check, the
doubly-exponential a-priori exponent bound (kept symbolic as a tower), and
the valuation cutoff certifying that a truncated series identity is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidInputError,
    NeedsExponentBoundError,
    ReducibleModulusError,
    UnsupportedError,
)
from .operators import DiffOperator
from .polynomials import Polynomial, as_fraction
from .singularities import (
    GlobalCensus,
    PointSpec,
    YES,
    finite_singular_points,
    global_census,
    indicial_polynomial,
    katz_rank,
)

REFINEMENTS = ("nminus1", "sumE", "minslopes")


# ---------------------------------------------------------------------------
# Fuchs relation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FuchsSummary:
    """Per-point exponent-sum defects and their global total.

    Each entry is S_rho = (sum of local exponents at rho) - r(r-1)/2; for an
    algebraic orbit the entry aggregates the whole orbit.  Ordinary points
    contribute zero, so only singular points and infinity are listed.  For a
    Fuchsian operator the total always equals -r(r-1).
    """

    per_point: tuple[tuple[PointSpec, Fraction], ...]
    total: Fraction
    order: int


def fuchs_summary(op: DiffOperator) -> FuchsSummary:
    """Exponent-sum summary over all singularities and infinity.  Works from
    coefficient ratios of the indicial polynomials, so it is exact even when
    individual exponents are irrational.  Raises UnsupportedError on
    non-Fuchsian operators."""
    if not op:
        raise InvalidInputError("Fuchs summary of the zero operator")
    r = op.order
    half = Fraction(r * (r - 1), 2)
    entries: list[tuple[PointSpec, Fraction]] = []
    worklist = finite_singular_points(op) + [PointSpec.infinity()]
    while worklist:
        spec = worklist.pop(0)
        if katz_rank(op, spec) != 0:
            raise UnsupportedError(
                f"operator is irregular at {spec.describe()}; "
                "the classical Fuchs relation does not apply"
            )
        try:
            ind = indicial_polynomial(op, spec)
        except ReducibleModulusError as exc:
            g = exc.factor.monic()
            other = spec.value.exact_div(g)
            for piece in (g, other):
                if piece.degree >= 2:
                    worklist.append(PointSpec.orbit(piece))
                elif piece.degree == 1:
                    worklist.append(PointSpec.rational(-piece[0] / piece[1]))
            continue
        s_rho = ind.exponent_sum - spec.size * half
        entries.append((spec, s_rho))
    entries.sort(key=lambda e: e[0].sort_key)
    total = sum((s for _, s in entries), Fraction(0))
    return FuchsSummary(per_point=tuple(entries), total=total, order=r)


def check_fuchs_relation(op: DiffOperator) -> tuple[bool, FuchsSummary]:
    """True iff the exponent-sum total equals -r(r-1) exactly."""
    summary = fuchs_summary(op)
    r = summary.order
    return summary.total == -r * (r - 1), summary


# ---------------------------------------------------------------------------
# The degree bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundInputs:
    r: int
    E: Fraction
    N: Fraction
    S: int
    E_per_point: tuple[Fraction, ...] | None = None
    q: int | None = None
    sing_count: int | None = None
    provenance: str = "user-supplied"  # "computed" | "user-supplied" | "apriori-tower"

    def validate(self):
        if self.r < 0 or self.E < 0 or self.N < 0 or self.S < 0:
            raise InvalidInputError("bound inputs must be nonnegative")
        if self.q is not None and self.q < 0:
            raise InvalidInputError("degree input must be nonnegative")
        if self.E_per_point is not None and any(e < 0 for e in self.E_per_point):
            raise InvalidInputError("per-point exponent bounds must be nonnegative")


@dataclass(frozen=True)
class BoundReport:
    inputs: BoundInputs
    plain_bound: Fraction
    refined_bound: Fraction
    term_breakdown: tuple[Fraction, Fraction, Fraction, Fraction]
    refined_terms: tuple[Fraction, Fraction, Fraction, Fraction]
    refinements_applied: tuple[str, ...]

    @property
    def plain_ceiling(self) -> int:
        return math.ceil(self.plain_bound)

    @property
    def refined_ceiling(self) -> int:
        return math.ceil(self.refined_bound)


def degree_bound(inputs: BoundInputs, refinements=()) -> BoundReport:
    """Evaluate the degree bound with the requested refinements.  The four
    addends are returned separately; the reported bounds are clamped at zero
    (the raw formula can dip below zero for r >= 2 when E = N = S = 0, where
    no admissible factor data exists)."""
    inputs.validate()
    bad = set(refinements) - set(REFINEMENTS)
    if bad:
        raise InvalidInputError(f"unknown refinements: {sorted(bad)}")
    r, e, n, s = inputs.r, inputs.E, inputs.N, inputs.S
    t1 = Fraction(r * r) * (s + 1) * e
    t2 = Fraction(r) * (n + 1) * s
    t3 = Fraction(r) * n
    t4 = Fraction(r * r * (r - 1), 2) * ((s + 1) * (n + 1) - 2)
    plain_terms = (t1, t2, t3, t4)
    applied: list[str] = []

    r1, r3, r4 = t1, t3, t4
    if "sumE" in refinements and inputs.E_per_point is not None:
        r1 = Fraction(r * r) * sum(inputs.E_per_point, Fraction(0))
        applied.append("sumE")
    if "nminus1" in refinements and n >= 1:
        r3 = Fraction(r) * (n - 1)
        applied.append("nminus1")
    if (
        "minslopes" in refinements
        and inputs.q is not None
        and inputs.sing_count is not None
    ):
        slope_part = min((s + 1) * n, Fraction(2 * inputs.q + 1 - inputs.sing_count))
        r4 = Fraction(r * r * (r - 1), 2) * ((s + 1) + slope_part - 2)
        applied.append("minslopes")
    refined_terms = (r1, t2, r3, r4)

    plain = max(sum(plain_terms, Fraction(0)), Fraction(0))
    refined = max(sum(refined_terms, Fraction(0)), Fraction(0))
    return BoundReport(
        inputs=inputs,
        plain_bound=plain,
        refined_bound=min(refined, plain),
        term_breakdown=plain_terms,
        refined_terms=refined_terms,
        refinements_applied=tuple(applied),
    )


@dataclass(frozen=True)
class OrderBounds:
    """Bound reports for one candidate factor order, under both singularity
    counting conventions, plus the coarse a-priori fallback N <= m+q,
    S <= q."""

    r: int
    strict: BoundReport
    relaxed: BoundReport
    coarse: BoundReport


@dataclass(frozen=True)
class OperatorBoundSweep:
    census: GlobalCensus
    E: Fraction
    E_provenance: str
    per_order: tuple[OrderBounds, ...]

    def best_cap(self, r: int, convention: str = "strict") -> int:
        for entry in self.per_order:
            if entry.r == r:
                report = entry.strict if convention == "strict" else entry.relaxed
                return report.refined_ceiling
        raise InvalidInputError(f"no bound computed for order {r}")


def bound_from_operator(
    op: DiffOperator,
    E_override=None,
    refinements="auto",
    conservative_orbits: bool = True,
    census: GlobalCensus | None = None,
) -> OperatorBoundSweep:
    """Run the singularity census and evaluate the degree bound for every
    candidate factor order r = 1..m.  For operators that are not
    regular-singular everywhere the exponent bound cannot be derived here and
    must be supplied via ``E_override``.  A census computed earlier can be
    passed in to avoid repeating the classification."""
    if census is None:
        census = global_census(op, conservative_orbits=conservative_orbits)
    m = census.order
    q = census.degree
    if E_override is not None:
        e_val = as_fraction(E_override)
        if e_val < 0:
            raise InvalidInputError("exponent bound override must be nonnegative")
        provenance = "user-supplied"
        pp_strict = pp_relaxed = None
    elif census.E_fuchsian is not None:
        e_val = census.E_fuchsian
        provenance = "computed"
        pp_strict = census.E_per_point_strict
        pp_relaxed = census.E_per_point_relaxed
    else:
        raise NeedsExponentBoundError(
            "operator has an irregular point; supply an exponent bound override"
        )
    if refinements == "auto":
        refinements = set(REFINEMENTS)
    entries = []
    for r in range(1, max(m, 1) + 1):
        strict_inputs = BoundInputs(
            r=r, E=e_val, N=census.Nmax, S=census.S_strict,
            E_per_point=pp_strict, q=q, sing_count=census.sing_count_total,
            provenance=provenance,
        )
        relaxed_inputs = BoundInputs(
            r=r, E=e_val, N=census.Nmax, S=census.S,
            E_per_point=pp_relaxed, q=q, sing_count=census.sing_count_total,
            provenance=provenance,
        )
        coarse_inputs = BoundInputs(
            r=r, E=e_val, N=Fraction(m + q), S=q,
            q=q, sing_count=census.sing_count_total, provenance=provenance,
        )
        entries.append(
            OrderBounds(
                r=r,
                strict=degree_bound(strict_inputs, refinements),
                relaxed=degree_bound(relaxed_inputs, refinements),
                coarse=degree_bound(coarse_inputs, refinements),
            )
        )
    return OperatorBoundSweep(
        census=census, E=e_val, E_provenance=provenance, per_order=tuple(entries)
    )


# ---------------------------------------------------------------------------
# A-priori exponent bound (doubly exponential tower)
# ---------------------------------------------------------------------------

_EXACT_BIT_LIMIT = 4_000_000


@dataclass(frozen=True)
class TowerBound:
    """The a-priori exponent bound 2^(a^e) * H^(b^f), kept symbolic.

    ``log2_estimate`` is a^e + b^f * log2(H): an exact integer when H is a
    power of two and the numbers fit comfortably in memory, otherwise a
    certified rational upper bound; ``None`` with ``log2_log2_upper`` set
    when even the logarithm is too large to materialize.
    """

    base2_exponent: tuple[int, int]  # (a, e) meaning 2^(a^e)
    height_part: tuple[int, tuple[int, int]]  # (H, (b, f)) meaning H^(b^f)
    log2_estimate: int | Fraction | None
    log2_is_exact: bool
    log2_log2_upper: int | None = None


def _log2_upper(h: int, scale_bits: int = 10) -> Fraction:
    """Certified rational upper bound on log2(h) via repeated squaring."""
    t = 1 << scale_bits
    return Fraction(pow(h, t).bit_length(), t)


def apriori_exponent_bound(q: int, m: int, kappa: int, height: int) -> TowerBound:
    """A-priori bound on the largest local exponent modulus of an operator of
    order m, degree q, naive height ``height``, over a number field of degree
    kappa.  Far too large to use directly; callers take the log2 estimate or
    keep the tower symbolic."""
    if m < 1 or kappa < 1 or height < 1 or q < 0:
        raise InvalidInputError("tower bound requires m, kappa, height >= 1 and q >= 0")
    e = 9 * (q + 1) ** 2 * m ** (3 * m)
    a = 36 * (q + 1) * m * kappa
    b = 5 * kappa * (q + 1) * m
    feasible = e * a.bit_length() < _EXACT_BIT_LIMIT and e * b.bit_length() < _EXACT_BIT_LIMIT
    if feasible:
        a_pow = a**e
        b_pow = b**e
        if height == 1:
            return TowerBound((a, e), (height, (b, e)), a_pow, True)
        lg = height.bit_length() - 1
        if height == 1 << lg:
            return TowerBound((a, e), (height, (b, e)), a_pow + b_pow * lg, True)
        upper = a_pow + b_pow * _log2_upper(height)
        return TowerBound((a, e), (height, (b, e)), upper, False)
    # even log2 of the bound is astronomical; report log2(log2(bound)) instead
    log2a_ub = a.bit_length()
    log2b_ub = b.bit_length()
    loglog = max(e * log2a_ub, e * log2b_ub * max(height.bit_length(), 1))
    return TowerBound(
        (a, e), (height, (b, e)), None, False,
        log2_log2_upper=loglog.bit_length(),
    )


# ---------------------------------------------------------------------------
# Valuation cutoff
# ---------------------------------------------------------------------------


def valuation_bound(r: int, n: int, q: int, m: int, E) -> int:
    """Cutoff index: if the first N+1 Taylor coefficients of
    sum_j P_j f^(j) vanish (deg P_j <= n, order r, f annihilated by an
    operator of order m and degree q with exponent bound E), the whole series
    is zero.  N = floor(r(n+1) + 2(q+1)^2 m^3 + 2(q+1) m^2 (E+1))."""
    if not 1 <= r <= m:
        raise InvalidInputError("candidate order must satisfy 1 <= r <= m")
    if n < 0 or q < 0:
        raise InvalidInputError("degrees must be nonnegative")
    e_val = as_fraction(E)
    if e_val < 0:
        raise InvalidInputError("exponent bound must be nonnegative")
    value = r * (n + 1) + 2 * (q + 1) ** 2 * m**3 + 2 * (q + 1) * m**2 * (e_val + 1)
    return math.floor(value)
