"""Orbit iteration, termination certificates, and square relations."""

from fractions import Fraction

import pytest

from mahlerdyn.algnum import algebraic_equals, make
from mahlerdyn.config import Budgets
from mahlerdyn.errors import NotApplicable
from mahlerdyn.intpoly import IntPolynomial
from mahlerdyn.mahler import NumberTag
from mahlerdyn.orbit import (certify_wandering_alternating,
                             certify_wandering_deg4,
                             detect_square_relations, iterate, square_value,
                             verify_log_recursion)


def num(coeffs, selector=0):
    return make(IntPolynomial.of(coeffs), selector)


def test_cubic_terminates_at_sixteen():
    rec = iterate(num([2, -4, 0, 1]))
    assert rec.status.tag == "FixedPointReached"
    last = rec.steps[-1]
    assert last.minpoly.degree == 1
    assert algebraic_equals(last, make(IntPolynomial.of([-16, 1])))


def test_sqrt2_orbit_two():
    rec = iterate(num([-2, 0, 1]))
    assert rec.orbit_size == 2
    assert rec.status.tag == "FixedPointReached"
    assert rec.status.number_class.tag == NumberTag.RATIONAL_INTEGER
    assert rec.status.number_class.integer_value == 2


def test_zhang_quartic_certified_infinite():
    rec = iterate(num([-1, 1, 5, 0, 1]), min_steps=6)
    assert rec.status.tag == "CertifiedInfinite"
    assert rec.status.reason == "Deg4Trichotomy"
    assert rec.status.certificate.squared_identity
    rels = detect_square_relations(rec)
    assert {(1 + 2, 1), (2 + 2, 2), (3 + 2, 3), (4 + 2, 4)} <= set(rels)
    info = verify_log_recursion(rec)
    assert info["recursion"] == "a_{n+1} = 2 a_{n-1}"
    assert info["verified_n"]


def test_degree_six_orbit_five():
    rec = iterate(num([-1, -4, -2, 0, -4, -1, 1]))
    assert rec.orbit_size == 5
    assert rec.status.tag == "FixedPointReached"


def test_salem_quartic_is_fixed_no_certificate():
    rec = iterate(num([1, -1, -1, -1, 1]))
    assert rec.orbit_size == 1
    assert rec.status.tag == "FixedPointReached"
    assert rec.status.certificate is None


def test_deg4_certificate_not_applicable_off_domain():
    a = num([-1, -1, 0, 0, 1])  # quartic Pisot, unit? const -1 yes, fixed
    rec = iterate(a)
    assert rec.status.tag == "FixedPointReached"
    cubic = num([-1, -1, 0, 1])
    with pytest.raises(NotApplicable):
        certify_wandering_deg4(cubic, iterate(cubic).steps)


def test_alternating_certificate_not_applicable_small_degree():
    with pytest.raises(NotApplicable):
        certify_wandering_alternating(num([-1, -1, 0, 1]))


def test_quintic_wandering_certificate():
    a = num([-1, -1, 0, 0, 0, 1])
    cert = certify_wandering_alternating(a)
    assert cert.galois.certified
    assert len(cert.excluded_transforms) >= 1
    rec = iterate(a, min_steps=5)
    assert rec.status.tag == "CertifiedInfinite"
    assert rec.status.reason == "AlternatingGroup"
    logs = rec.log_values
    assert len(logs) >= 5
    assert all(b > a_ for a_, b in zip(logs, logs[1:]))


def test_square_value_of_golden_ratio():
    phi = num([-1, -1, 1])
    sq = square_value(phi)
    assert tuple(sq.minpoly.coeffs) == (1, -3, 1)


def test_fixed_point_log_recursion():
    rec = iterate(num([-1, -1, 0, 1]))
    info = verify_log_recursion(rec)
    assert info["recursion"] == "a_{n+1} = a_n"


def test_log_values_match_step_count():
    rec = iterate(num([-2, 0, 1]))
    assert len(rec.log_values) == len(rec.steps)
    assert rec.log_values[0] > 0
    j = rec.to_json()
    assert j["orbit_size"] == 2
    assert j["status"]["tag"] == "FixedPointReached"


def test_budget_exhausted_on_tiny_iteration_cap():
    rec = iterate(num([-1, 1, 5, 0, 1]), Budgets(max_iter=2))
    assert rec.status.tag in ("BudgetExhausted", "CertifiedInfinite")
