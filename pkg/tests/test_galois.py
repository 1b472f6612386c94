"""Dedekind cycle types and the one-sided A_d certificate."""

import pytest

from mahlerdyn.errors import DegreeTooSmall, ReducibleInput
from mahlerdyn.galois import contains_alternating_certificate, cycle_types
from mahlerdyn.intpoly import IntPolynomial


def test_quadratic_patterns_split_or_inert():
    pats = {e.factorization_degrees
            for e in cycle_types(IntPolynomial.of([-2, 0, 1]), 5)}
    assert pats <= {(1, 1), (2,)}


def test_quintic_has_six_order_and_five_cycle():
    f = IntPolynomial.of([-1, -1, 0, 0, 0, 1])  # x^5 - x - 1
    pats = {e.factorization_degrees for e in cycle_types(f, 50)}
    assert (2, 3) in pats
    assert (5,) in pats


def test_klein_four_never_four_cycle():
    f = IntPolynomial.of([1, 0, 0, 0, 1])  # x^4 + 1
    pats = {e.factorization_degrees for e in cycle_types(f, 20)}
    assert (4,) not in pats


def test_certificate_quintic():
    cert = contains_alternating_certificate(IntPolynomial.of([-1, -1, 0, 0,
                                                              0, 1]))
    assert cert.certified
    assert cert.rule in ("jordan_prime_cycle", "primitive_plus_transposition")
    assert cert.witnesses


def test_certificate_determinism():
    f = IntPolynomial.of([-1, -1, 0, 0, 0, 1])
    a = contains_alternating_certificate(f, 40)
    b = contains_alternating_certificate(f, 40)
    assert a == b


def test_certificate_rejects_small_degree_and_reducible():
    with pytest.raises(DegreeTooSmall):
        contains_alternating_certificate(IntPolynomial.of([1, 0, 0, 0, 1]))
    with pytest.raises(ReducibleInput):
        contains_alternating_certificate(
            IntPolynomial.of([1, 1, 1, 1, 1, 1]))  # x^5+...+1, reducible


def test_budget_respected():
    f = IntPolynomial.of([-2, 0, 1])
    assert len(cycle_types(f, 7)) == 7
