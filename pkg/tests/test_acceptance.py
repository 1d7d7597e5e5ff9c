"""Acceptance suite: one test per release criterion, exact tolerances.

Each test prints a single PASS/FAIL line (run with ``pytest -s`` to see them
even on success).  Shared randomized corpora come from ``conftest``.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from factorbounds.bounds import (
    BoundInputs,
    apriori_exponent_bound,
    bound_from_operator,
    check_fuchs_relation,
    degree_bound,
    valuation_bound,
)
from factorbounds.operators import INF
from factorbounds.parsing import parse_operator
from factorbounds.series import minimize
from factorbounds.singularities import (
    NO,
    PointSpec,
    YES,
    finite_singular_points,
    global_census,
    is_apparent,
    katz_rank,
    newton_polygon,
)

from conftest import (
    confluent_operator,
    confluent_right_factor,
    gauss_operator,
    legendre_operator,
    log_obstruction_operator,
)


def report(name: str, ok: bool, extra: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"{status} {name}" + (f" ({extra})" if extra else ""))
    assert ok, name


def test_criterion_1_confluent_optimality():
    """Right factor division, factor degree, and exact tightness of the
    refined bound for z D^2 + (2-z) D + k, k = 1..8."""
    start = time.time()
    ok = True
    for k in range(1, 9):
        left = confluent_operator(k)
        factor = confluent_right_factor(k)
        _, remainder = left.right_divmod(factor)
        ok &= not remainder
        ok &= factor.degree_profile().degree_z == k
        bound = degree_bound(
            BoundInputs(r=1, E=Fraction(k), N=Fraction(1), S=0), {"nminus1"}
        )
        ok &= bound.refined_bound == k
    elapsed = time.time() - start
    ok &= elapsed < 1.0
    report("criterion 1: confluent optimality suite (k=1..8)", ok, f"{elapsed:.2f}s")


def test_criterion_2_fuchs_relation_corpus():
    """Exponent-sum relation on five Gauss operators and Legendre n=1..3."""
    start = time.time()
    rng = random.Random(811)
    ok = True
    for _ in range(5):
        a = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        b = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        holds, summary = check_fuchs_relation(gauss_operator(a, b, c))
        ok &= holds and summary.total == -2
    for n in (1, 2, 3):
        holds, summary = check_fuchs_relation(legendre_operator(n))
        ok &= holds and summary.total == -2
    elapsed = time.time() - start
    ok &= elapsed < 1.0
    report("criterion 2: Fuchs relation corpus", ok, f"{elapsed:.2f}s")


def test_criterion_3_degree_bound_soundness(factorization_corpus):
    """deg_z(M) <= ceiling of the census-driven bound on 200 factorizations;
    non-Fuchsian cases take an exponent-bound override derived from the
    constructed factor."""
    start = time.time()
    violations = 0
    fuchsian_cases = 0
    for n_op, m_op, l_op in factorization_corpus:
        census = global_census(l_op)
        if census.E_fuchsian is not None:
            sweep = bound_from_operator(l_op, census=census)
            fuchsian_cases += 1
        else:
            e_override = Fraction(m_op.degree_profile().degree_z + l_op.order + 1)
            sweep = bound_from_operator(l_op, E_override=e_override, census=census)
        cap = sweep.best_cap(m_op.order, "strict")
        if m_op.degree_profile().degree_z > cap:
            violations += 1
    elapsed = time.time() - start
    ok = violations == 0 and elapsed < 30.0 and fuchsian_cases >= 50
    report(
        "criterion 3: degree bound soundness on 200 factorizations",
        ok,
        f"{elapsed:.1f}s, {fuchsian_cases} census-exact cases, {violations} violations",
    )


def test_criterion_4_polygon_additivity(factorization_corpus):
    """Newton polygons of products are Minkowski sums, and factor slopes
    never exceed the product's, at every singularity of L and at infinity."""
    start = time.time()
    bad = 0
    points_checked = 0
    for n_op, m_op, l_op in factorization_corpus:
        for spec in finite_singular_points(l_op) + [PointSpec.infinity()]:
            p_l = newton_polygon(l_op, spec)
            p_n = newton_polygon(n_op, spec)
            p_m = newton_polygon(m_op, spec)
            if p_l != p_n.minkowski_sum(p_m):
                bad += 1
            if p_m.max_slope > p_l.max_slope:
                bad += 1
            points_checked += 1
    elapsed = time.time() - start
    ok = bad == 0 and elapsed < 30.0
    report(
        "criterion 4: polygon Minkowski additivity and slope domination",
        ok,
        f"{elapsed:.1f}s, {points_checked} points",
    )


def test_criterion_5_apparent_oracle():
    """Exact classification of the three reference local structures."""
    ok = is_apparent(parse_operator("z*D^2 - D"), 0) == YES
    ok &= is_apparent(log_obstruction_operator(), 0) == NO
    ok &= is_apparent(parse_operator("z^2*D + 1"), 0) == NO
    ok &= katz_rank(parse_operator("z^2*D + 1"), 0) == 1
    report("criterion 5: apparent-singularity oracle", ok)


def test_criterion_6_formula_spot_values():
    """Exact integer spot checks of the three closed-form bounds."""
    ok = valuation_bound(1, 2, 1, 2, 3) == 131
    tower = apriori_exponent_bound(0, 1, 1, 1)
    ok &= tower.log2_estimate == 101559956668416 and tower.log2_is_exact
    ok &= degree_bound(BoundInputs(r=2, E=Fraction(3), N=Fraction(0), S=2)).plain_bound == 42
    report("criterion 6: formula spot values", ok)


def test_criterion_7_minimizer_end_to_end():
    """(D+z)(D-1) with 40 exponential coefficients yields D - 1 with a zero
    right-division remainder."""
    start = time.time()
    left = parse_operator("(D+z)*(D-1)")
    coeffs = [Fraction(1, math.factorial(n)) for n in range(40)]
    result = minimize(left, coeffs, degree_cap=2, E_override=1)
    ok = result.found and result.order == 1
    ok &= result.operator == parse_operator("D - 1")
    ok &= bool(result.division_remainder_zero)
    elapsed = time.time() - start
    ok &= elapsed < 5.0
    report("criterion 7: minimizer end to end", ok, f"{elapsed:.2f}s")
