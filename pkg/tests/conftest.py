"""Shared corpus builders for the test suite.

Randomized tests use seeded ``random.Random`` instances so failures are
reproducible; the factorization corpus is built once per session and shared
between the degree-bound soundness and polygon-additivity checks.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from factorbounds.operators import DiffOperator
from factorbounds.polynomials import Polynomial, RationalFunction


def rand_fraction(rng, span: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice([1, 1, 1, 2, 3]))


def rand_poly(rng, max_deg: int, zero_ok: bool = True) -> Polynomial:
    deg = rng.randint(0, max_deg)
    p = Polynomial([rand_fraction(rng) for _ in range(deg + 1)])
    if not p and not zero_ok:
        return Polynomial([Fraction(rng.randint(1, 4))])
    return p


def rand_rational_function(rng, max_deg: int = 3) -> RationalFunction:
    den = rand_poly(rng, rng.choice([0, 0, 1, 2]), zero_ok=False)
    return RationalFunction(rand_poly(rng, max_deg), den)


def rand_poly_operator(rng, max_order: int = 2, max_deg: int = 2) -> DiffOperator:
    order = rng.randint(0, max_order)
    polys = [rand_poly(rng, max_deg) for _ in range(order)]
    polys.append(rand_poly(rng, max_deg, zero_ok=False))
    return DiffOperator.from_polynomials(polys)


def rand_operator(rng, max_order: int = 2, max_deg: int = 3) -> DiffOperator:
    order = rng.randint(0, max_order)
    coeffs = [rand_rational_function(rng, max_deg) for _ in range(order)]
    coeffs.append(RationalFunction(rand_poly(rng, max_deg, zero_ok=False)))
    return DiffOperator(coeffs)


def rand_monic_operator(rng, max_order: int = 2, max_deg: int = 3) -> DiffOperator:
    order = rng.randint(1, max_order)
    den = rand_poly(rng, max_deg, zero_ok=False)
    coeffs = [RationalFunction(rand_poly(rng, max_deg), den) for _ in range(order)]
    coeffs.append(RationalFunction(Polynomial([1])))
    return DiffOperator(coeffs)


def fuchsian_monic_operator(rng, max_order: int = 2) -> DiffOperator:
    """Monic operator in the classical global shape that is regular-singular
    everywhere (including infinity): coefficient of D^j is A_i / A^i with
    i = order - j, A squarefree, and deg(A_i) <= i (deg A - 1)."""
    order = rng.randint(1, max_order)
    roots = rng.sample([-2, -1, 0, 1, 2, 3], rng.randint(1, 2))
    a = Polynomial([1])
    for rt in roots:
        a = a * Polynomial([-rt, 1])
    coeffs = []
    for j in range(order):
        i = order - j
        cap = max(i * (a.degree - 1), 0)
        coeffs.append(RationalFunction(rand_poly(rng, cap), a**i))
    coeffs.append(RationalFunction(Polynomial([1])))
    return DiffOperator(coeffs)


# --- named operator families -------------------------------------------------


def gauss_operator(a: Fraction, b: Fraction, c: Fraction) -> DiffOperator:
    """z(1-z) D^2 + (c - (a+b+1) z) D - ab."""
    return DiffOperator.from_polynomials(
        [
            Polynomial([-Fraction(a) * Fraction(b)]),
            Polynomial([Fraction(c), -(Fraction(a) + Fraction(b) + 1)]),
            Polynomial([0, 1, -1]),
        ]
    )


def legendre_operator(n: int) -> DiffOperator:
    """(1-z^2) D^2 - 2z D + n(n+1)."""
    return DiffOperator.from_polynomials(
        [Polynomial([n * (n + 1)]), Polynomial([0, -2]), Polynomial([1, 0, -1])]
    )


def confluent_operator(k: int) -> DiffOperator:
    """z D^2 + (2 - z) D + k."""
    return DiffOperator.from_polynomials(
        [Polynomial([k]), Polynomial([2, -1]), Polynomial([0, 1])]
    )


def confluent_polynomial(k: int) -> Polynomial:
    """H(z) = sum_{l=0}^{k} C(k, l) (-z)^l / (l+1)!; the degree-k polynomial
    solution of the confluent operator."""
    return Polynomial(
        [Fraction(math.comb(k, l) * (-1) ** l, math.factorial(l + 1)) for l in range(k + 1)]
    )


def confluent_right_factor(k: int) -> DiffOperator:
    """D - H'/H for the confluent polynomial H."""
    h = confluent_polynomial(k)
    return DiffOperator.derivation() - DiffOperator([RationalFunction(h.derivative(), h)])


def log_obstruction_operator() -> DiffOperator:
    """Order-2 operator with solution basis {z^2, 1 + z^2 log z} at 0,
    built from the Wronskian of that basis: z(z^2-2) D^2 - (3z^2-2) D + 4z.
    Its point 0 has exponents {0, 2} but only a one-dimensional space of
    power-series solutions."""
    return DiffOperator.from_polynomials(
        [Polynomial([0, 4]), Polynomial([2, 0, -3]), Polynomial([0, -2, 0, 1])]
    )


# --- shared factorization corpus ----------------------------------------------


@pytest.fixture(scope="session")
def factorization_corpus():
    """200 factorizations L = N * M with M monic; half built from the global
    Fuchsian shape (so the census can derive the exponent bound), half free."""
    rng = random.Random(46103)
    corpus = []
    while len(corpus) < 200:
        if len(corpus) % 2 == 0:
            m = fuchsian_monic_operator(rng)
            n = fuchsian_monic_operator(rng)
        else:
            m = rand_monic_operator(rng)
            n = rand_poly_operator(rng)
        if not n:
            continue
        corpus.append((n, m, n * m))
    return corpus
