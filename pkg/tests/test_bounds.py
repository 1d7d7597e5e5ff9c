"""Degree-bound formulas, Fuchs relation, tower and valuation bounds."""

import random
from fractions import Fraction

import pytest

from factorbounds.bounds import (
    BoundInputs,
    apriori_exponent_bound,
    bound_from_operator,
    check_fuchs_relation,
    fuchs_summary,
    degree_bound,
    valuation_bound,
)
from factorbounds.errors import (
    InvalidInputError,
    NeedsExponentBoundError,
    UnsupportedError,
)
from factorbounds.parsing import parse_operator

from conftest import confluent_operator, gauss_operator, legendre_operator


class TestFuchsRelation:
    def test_gauss_half_values(self):
        op = gauss_operator(Fraction(1, 2), Fraction(1, 2), Fraction(1))
        holds, summary = check_fuchs_relation(op)
        assert holds
        values = {p.describe(): s for p, s in summary.per_point}
        assert values["0"] == -1
        assert values["1"] == -1
        assert values["inf"] == 0
        assert summary.total == -2

    def test_order_one_total_zero(self):
        holds, summary = check_fuchs_relation(parse_operator("(z-1)*D - 3"))
        assert holds and summary.total == 0

    def test_constant_coefficient_second_order(self):
        holds, summary = check_fuchs_relation(parse_operator("D^2"))
        assert holds and summary.total == -2

    def test_gauss_family(self):
        rng = random.Random(601)
        for _ in range(5):
            a = Fraction(rng.randint(-4, 4), rng.randint(1, 5))
            b = Fraction(rng.randint(-4, 4), rng.randint(1, 5))
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 5))
            holds, summary = check_fuchs_relation(gauss_operator(a, b, c))
            assert holds, (a, b, c, summary)

    def test_legendre(self):
        for n in (1, 2, 3):
            holds, summary = check_fuchs_relation(legendre_operator(n))
            assert holds and summary.total == -2

    def test_non_fuchsian_rejected(self):
        with pytest.raises(UnsupportedError):
            fuchs_summary(parse_operator("D - 1"))

    def test_ordinary_points_contribute_zero(self):
        # census only lists singular points; a regular point must not appear
        _, summary = check_fuchs_relation(parse_operator("(z-1)*D - 3"))
        names = [p.describe() for p, _ in summary.per_point]
        assert "0" not in names


class TestDegreeBoundFormula:
    def test_direct_substitution(self):
        report = degree_bound(BoundInputs(r=2, E=Fraction(3), N=Fraction(0), S=2))
        assert report.plain_bound == 42
        assert report.term_breakdown == (36, 4, 0, 2)

    def test_confluent_is_tight(self):
        for k in range(1, 9):
            report = degree_bound(
                BoundInputs(r=1, E=Fraction(k), N=Fraction(1), S=0), {"nminus1"}
            )
            assert report.refined_bound == k
            assert report.plain_bound == k + 1

    def test_zero_order_factor(self):
        assert degree_bound(BoundInputs(r=0, E=Fraction(9), N=Fraction(2), S=3)).plain_bound == 0

    def test_negative_inputs_rejected(self):
        with pytest.raises(InvalidInputError):
            degree_bound(BoundInputs(r=1, E=Fraction(-1), N=Fraction(0), S=0))
        with pytest.raises(InvalidInputError):
            degree_bound(BoundInputs(r=1, E=Fraction(1), N=Fraction(0), S=0), {"bogus"})

    def test_clamped_at_zero(self):
        # raw formula is -2 here; the reported bound clamps to 0
        report = degree_bound(BoundInputs(r=2, E=Fraction(0), N=Fraction(0), S=0))
        assert report.plain_bound == 0
        assert report.term_breakdown[3] == -2

    def test_refined_never_exceeds_plain(self):
        rng = random.Random(602)
        for _ in range(200):
            inputs = BoundInputs(
                r=rng.randint(0, 4),
                E=Fraction(rng.randint(0, 20), rng.randint(1, 3)),
                N=Fraction(rng.randint(0, 5)),
                S=rng.randint(0, 4),
                q=rng.randint(0, 6),
                sing_count=rng.randint(0, 4),
            )
            report = degree_bound(inputs, {"nminus1", "minslopes"})
            assert report.refined_bound <= report.plain_bound
            assert report.plain_bound >= 0 and report.refined_bound >= 0

    def test_equal_when_no_slope_and_no_per_point_data(self):
        inputs = BoundInputs(r=2, E=Fraction(5), N=Fraction(0), S=1)
        report = degree_bound(inputs, {"nminus1", "sumE"})
        assert report.refined_bound == report.plain_bound

    def test_monotone_in_E_N_S(self):
        rng = random.Random(603)
        for _ in range(200):
            r = rng.randint(0, 4)
            e = Fraction(rng.randint(0, 10))
            n = Fraction(rng.randint(0, 4))
            s = rng.randint(0, 4)
            base = degree_bound(BoundInputs(r=r, E=e, N=n, S=s)).plain_bound
            assert degree_bound(BoundInputs(r=r, E=e + 1, N=n, S=s)).plain_bound >= base
            assert degree_bound(BoundInputs(r=r, E=e, N=n + 1, S=s)).plain_bound >= base
            assert degree_bound(BoundInputs(r=r, E=e, N=n, S=s + 1)).plain_bound >= base

    def test_monotone_in_r_when_terms_are_nonnegative(self):
        # in r the raw formula can decrease when (S+1)(N+1) < 2 (e.g. r: 2->3
        # at E=1, N=S=0); with (S+1)(N+1) >= 2 every addend is nondecreasing
        rng = random.Random(604)
        for _ in range(200):
            e = Fraction(rng.randint(0, 10))
            n = Fraction(rng.randint(0, 4))
            s = rng.randint(0, 4)
            if (s + 1) * (n + 1) < 2:
                continue
            values = [
                degree_bound(BoundInputs(r=r, E=e, N=n, S=s)).plain_bound
                for r in range(0, 5)
            ]
            assert values == sorted(values)

    def test_r_monotonicity_counterexample_is_real(self):
        f2 = degree_bound(BoundInputs(r=2, E=Fraction(1), N=Fraction(0), S=0)).plain_bound
        f3 = degree_bound(BoundInputs(r=3, E=Fraction(1), N=Fraction(0), S=0)).plain_bound
        assert f3 < f2


class TestBoundFromOperator:
    def test_confluent_with_override(self):
        sweep = bound_from_operator(confluent_operator(3), E_override=3)
        entry = sweep.per_order[0]
        assert entry.r == 1
        assert entry.relaxed.refined_bound == 3  # S = 0 under the relaxed count
        assert sweep.E_provenance == "user-supplied"

    def test_gauss_census_path(self):
        op = gauss_operator(Fraction(1, 2), Fraction(1, 2), Fraction(1))
        sweep = bound_from_operator(op)
        assert sweep.E == Fraction(1, 2)
        assert sweep.E_provenance == "computed"
        entry = sweep.per_order[0]
        assert entry.strict.plain_bound == Fraction(7, 2)
        assert entry.strict.plain_ceiling == 4
        # coarse fallback uses N <= m+q, S <= q
        assert entry.coarse.inputs.N == 4 and entry.coarse.inputs.S == 2

    def test_constant_coefficients_with_zero_override(self):
        sweep = bound_from_operator(parse_operator("D^2 - 1"), E_override=0)
        entry = sweep.per_order[0]
        assert entry.strict.plain_bound == 1  # only the r*N addend survives

    def test_irregular_without_override_rejected(self):
        with pytest.raises(NeedsExponentBoundError):
            bound_from_operator(confluent_operator(2))


class TestTowerBound:
    def test_minimal_arguments(self):
        tb = apriori_exponent_bound(0, 1, 1, 1)
        assert tb.base2_exponent == (36, 9)
        assert tb.log2_estimate == 36**9 == 101559956668416
        assert tb.log2_is_exact

    def test_height_two(self):
        tb = apriori_exponent_bound(0, 1, 1, 2)
        assert tb.log2_estimate == 36**9 + 5**9
        assert tb.log2_is_exact

    def test_exponent_arithmetic(self):
        tb = apriori_exponent_bound(1, 2, 1, 1)
        a, e = tb.base2_exponent
        assert e == 9 * 4 * 2**6 == 2304
        assert a == 144
        assert tb.height_part[1][0] == 20

    def test_non_power_of_two_height_is_certified_upper(self):
        tb = apriori_exponent_bound(0, 1, 1, 3)
        exact_floor = 36**9 + 5**9 * Fraction(158496, 100000)
        assert not tb.log2_is_exact
        assert tb.log2_estimate >= exact_floor  # log2(3) = 1.58496...

    def test_astronomical_case_keeps_symbolic_data(self):
        tb = apriori_exponent_bound(1, 5, 2, 7)
        assert tb.log2_estimate is None
        assert tb.log2_log2_upper is not None
        assert tb.base2_exponent[1] == 9 * 4 * 5**15

    def test_invalid_inputs(self):
        with pytest.raises(InvalidInputError):
            apriori_exponent_bound(0, 0, 1, 1)
        with pytest.raises(InvalidInputError):
            apriori_exponent_bound(-1, 1, 1, 1)


class TestValuationBound:
    def test_spot_values(self):
        assert valuation_bound(1, 2, 1, 2, 3) == 131
        assert valuation_bound(1, 0, 0, 1, 0) == 5
        assert valuation_bound(2, 1, 0, 2, 1) == 36

    def test_fractional_exponent_bound_floors(self):
        assert valuation_bound(1, 0, 0, 1, Fraction(1, 2)) == 1 + 2 + 3

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidInputError):
            valuation_bound(3, 0, 0, 2, 0)
        with pytest.raises(InvalidInputError):
            valuation_bound(0, 0, 0, 2, 0)
