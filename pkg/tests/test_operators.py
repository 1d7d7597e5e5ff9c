"""Noncommutative operator algebra: products, division, adjoints, transforms."""

import random
from fractions import Fraction

import pytest

from factorbounds.errors import DivisionByZeroError, InvalidInputError
from factorbounds.operators import (
    INF,
    DiffOperator,
    theta_to_operator,
    to_theta_form,
)
from factorbounds.parsing import parse_operator
from factorbounds.polynomials import P_ONE, Polynomial, RationalFunction

from conftest import (
    confluent_operator,
    confluent_polynomial,
    confluent_right_factor,
    rand_operator,
)

D = DiffOperator.derivation()
ONE = DiffOperator([RationalFunction(P_ONE)])
Z = DiffOperator([RationalFunction(Polynomial.variable())])


class TestProduct:
    def test_commutation_rule(self):
        assert D * Z - Z * D == ONE

    def test_leibniz_example(self):
        assert (D * (Z * D)) == parse_operator("z*D^2 + D")

    def test_constant_factors_commute(self):
        assert (D - ONE) * (D + ONE) == parse_operator("D^2 - 1")
        assert (D + ONE) * (D - ONE) == parse_operator("D^2 - 1")

    def test_associativity_and_noncommutativity(self):
        rng = random.Random(301)
        for _ in range(40):
            a, b, c = (rand_operator(rng, 2, 2) for _ in range(3))
            assert (a * b) * c == a * (b * c)

    def test_order_additivity(self):
        rng = random.Random(302)
        for _ in range(40):
            a = rand_operator(rng, 3, 2)
            b = rand_operator(rng, 3, 2)
            if a and b:
                assert (a * b).order == a.order + b.order


class TestRightDivision:
    def test_division_with_remainder(self):
        q, r = (D * D).right_divmod(D - ONE)
        assert q == D + ONE
        assert r == ONE

    def test_exact_division(self):
        q, r = parse_operator("D^2 - 1").right_divmod(D - ONE)
        assert q == D + ONE
        assert not r

    def test_confluent_right_factor(self):
        # H from the binomial formula; D - H'/H divides z D^2 + (2-z) D + k
        for k in (2, 5):
            left = confluent_operator(k)
            factor = confluent_right_factor(k)
            q, r = left.right_divmod(factor)
            assert not r
            assert q * factor == left

    def test_reconstruction_on_random_pairs(self):
        rng = random.Random(303)
        for _ in range(200):
            l = rand_operator(rng, 3, 2)
            m = rand_operator(rng, 2, 2)
            if not l or not m or m.order < 1:
                continue
            q, r = l.right_divmod(m)
            assert q * m + r == l
            assert r.order < m.order

    def test_zero_divisor_rejected(self):
        with pytest.raises(DivisionByZeroError):
            D.right_divmod(DiffOperator.zero())


class TestAdjoint:
    def test_order_one(self):
        assert D.adjoint() == -D

    def test_euler(self):
        assert (Z * D).adjoint() == parse_operator("-z*D - 1")

    def test_self_adjoint_example(self):
        op = parse_operator("z*D^2 + D")
        assert op.adjoint() == op
        # cross-check through the anti-homomorphism with N = D, M = z*D
        n, m = D, Z * D
        assert (n * m).adjoint() == m.adjoint() * n.adjoint()

    def test_antihomomorphism_and_involution(self):
        rng = random.Random(304)
        for _ in range(40):
            n = rand_operator(rng, 2, 2)
            m = rand_operator(rng, 2, 2)
            if not n or not m:
                continue
            assert (n * m).adjoint() == m.adjoint() * n.adjoint()
            assert n.adjoint().adjoint() == n


class TestTransforms:
    def test_normalize_monic_examples(self):
        op = confluent_operator(3).normalize_monic()
        assert op.leading_coefficient() == RationalFunction(P_ONE)
        assert op.coefficient(1) == RationalFunction(Polynomial([2, -1]), Polynomial([0, 1]))
        assert op.coefficient(0) == RationalFunction(Polynomial([3]), Polynomial([0, 1]))
        assert D.normalize_monic() == D
        assert parse_operator("2*D + 2*z").normalize_monic() == parse_operator("D + z")
        with pytest.raises(InvalidInputError):
            DiffOperator.zero().normalize_monic()

    def test_shift_point(self):
        assert D.shift_point(1) == D
        assert parse_operator("(z-1)*D").shift_point(1) == Z * D
        assert (Z * D).shift_point(1) == parse_operator("(z+1)*D")

    def test_invert_variable_examples(self):
        assert D.invert_variable() == parse_operator("-z^2*D")
        assert (Z * D).invert_variable() == parse_operator("-z*D")
        assert (D - ONE).invert_variable() == parse_operator("-z^2*D - 1")

    def test_invert_variable_involution_up_to_monic(self):
        rng = random.Random(305)
        for _ in range(30):
            op = rand_operator(rng, 2, 2)
            if not op:
                continue
            twice = op.invert_variable().invert_variable()
            assert twice.normalize_monic() == op.normalize_monic()

    def test_invert_variable_multiplicative(self):
        rng = random.Random(306)
        for _ in range(30):
            a = rand_operator(rng, 2, 2)
            b = rand_operator(rng, 2, 2)
            if not a or not b:
                continue
            assert (a * b).invert_variable() == a.invert_variable() * b.invert_variable()


class TestThetaForm:
    def test_examples(self):
        # z D^2 = z^-1 theta (theta - 1)
        form = to_theta_form(parse_operator("z*D^2"), 0, window=3)
        assert form.entries[0] is None
        assert form.entries[1].valuation == -1 and form.entries[1].window[0] == -1
        assert form.entries[2].valuation == -1 and form.entries[2].window[0] == 1
        # z D = theta
        form = to_theta_form(Z * D, 0, window=2)
        assert form.entries[1].valuation == 0 and form.entries[1].window == (1, 0)
        # D = z^-1 theta
        form = to_theta_form(D, 0, window=2)
        assert form.entries[1].valuation == -1

    def test_window_validation(self):
        with pytest.raises(InvalidInputError):
            to_theta_form(D, 0, window=0)

    def test_round_trip_at_rational_points(self):
        rng = random.Random(307)
        for _ in range(30):
            op = rand_operator(rng, 2, 2)
            if not op:
                continue
            for point in (Fraction(0), Fraction(1), Fraction(-1, 2)):
                form = to_theta_form(op, point, window=4)
                rebuilt = theta_to_operator(form.exact).shift_point(-point)
                assert rebuilt == op

    def test_round_trip_at_infinity(self):
        op = parse_operator("D^2 - z")
        form = to_theta_form(op, INF, window=4)
        rebuilt = theta_to_operator(form.exact).invert_variable()
        assert rebuilt.normalize_monic() == op.normalize_monic()


class TestDegreeProfile:
    def test_confluent_factor_degree(self):
        for k in (1, 2, 4, 7):
            profile = confluent_right_factor(k).degree_profile()
            assert profile.order == 1
            assert profile.degree_z == k
            assert profile.denominator_degree == k

    def test_pure_power(self):
        profile = (D * D * D).degree_profile()
        assert profile.order == 3 and profile.degree_z == 0

    def test_confluent_operator_profile(self):
        profile = confluent_operator(3).degree_profile()
        assert profile.order == 2
        assert profile.degree_z == 1
        assert profile.denominator_degree == 1

    def test_polynomial_form_is_coprime_primitive(self):
        rng = random.Random(308)
        from factorbounds.polynomials import poly_gcd

        for _ in range(30):
            op = rand_operator(rng, 2, 2)
            if not op:
                continue
            polys = op.polynomial_form()
            fam = Polynomial()
            for p in polys:
                if p:
                    fam = poly_gcd(fam, p) if fam else p.monic()
            assert fam.degree == 0
            assert all(c.denominator == 1 for p in polys for c in p.coeffs)
            assert polys[-1].leading_coefficient() > 0


def test_height_on_confluent():
    assert confluent_operator(3).height() == 3
    assert parse_operator("(1/2)*D - z^2").height() == 2
