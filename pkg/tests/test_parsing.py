"""Operator text/JSON syntax and round trips."""

import random

import pytest

from factorbounds.errors import ParseError
from factorbounds.parsing import (
    operator_from_json,
    operator_to_json,
    parse_operator,
)

from conftest import confluent_operator, rand_operator


def test_confluent_shape():
    assert parse_operator("z*D^2 + (2-z)*D + 3") == confluent_operator(3)


def test_bare_derivation():
    op = parse_operator("D")
    assert op.order == 1 and op.coefficient(0).num.degree < 0


def test_rational_coefficient():
    op = parse_operator("(1/2)*D - z^2")
    assert op.order == 1
    assert op.coefficient(1).num[0] * 2 == 1


def test_noncommutative_products():
    assert parse_operator("D*z") == parse_operator("z*D + 1")
    assert parse_operator("(z*D)^2") == parse_operator("z^2*D^2 + z*D")


def test_division_by_constant_operator():
    assert parse_operator("z*D/2") == parse_operator("(1/2)*z*D")
    with pytest.raises(ParseError):
        parse_operator("z/D")


def test_errors_carry_positions():
    with pytest.raises(ParseError) as exc:
        parse_operator("z*D + w")
    assert exc.value.position == 6
    with pytest.raises(ParseError):
        parse_operator("z*(D + 1")
    with pytest.raises(ParseError):
        parse_operator("")
    with pytest.raises(ParseError):
        parse_operator("D^z")


def test_decimal_literals():
    assert parse_operator("0.5*D") == parse_operator("(1/2)*D")


def test_printer_parser_round_trip_500():
    rng = random.Random(401)
    checked = 0
    while checked < 500:
        op = rand_operator(rng, 3, 3)
        if not op:
            continue
        assert parse_operator(op.format()) == op
        checked += 1


def test_json_round_trip():
    rng = random.Random(402)
    for _ in range(100):
        op = rand_operator(rng, 3, 3)
        assert operator_from_json(operator_to_json(op)) == op


def test_json_polynomial_form_input():
    data = {"var": "z", "coeffs": [["3"], ["2", "-1"], ["0", "1"]]}
    assert operator_from_json(data) == confluent_operator(3)
    data_rational = {
        "var": "z",
        "coeffs": [["0"], {"num": ["1"], "den": ["0", "1"]}],
    }
    assert operator_from_json(data_rational) == parse_operator("(1/z)*D")
