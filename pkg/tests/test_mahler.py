"""Measure operator and number classification."""

from fractions import Fraction

from mahlerdyn.algnum import (algebraic_equals, is_rational_integer, make)
from mahlerdyn.intpoly import IntPolynomial, reverse
from mahlerdyn.mahler import (NumberTag, classify, is_fixed_point, is_unit,
                              mahler_measure, measure_ball)

LEHMER = IntPolynomial.of([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


def test_rational_case():
    res = mahler_measure(make(IntPolynomial.of([-3, 2])))
    assert is_rational_integer(res.value) == 3
    assert res.outside_count == 1


def test_lehmer_is_its_own_measure():
    a = make(LEHMER)
    res = mahler_measure(a)
    assert algebraic_equals(res.value, a)
    assert res.outside_count == 1
    mid = res.numeric.midpoint_fraction()[0]
    assert abs(mid - Fraction(117628, 100000)) < Fraction(1, 10**4)


def test_cubic_norm2_measure():
    a = make(IntPolynomial.of([2, -4, 0, 1]))
    res = mahler_measure(a)
    assert res.outside_count == 2
    assert res.value.degree == 3
    mid = res.numeric.midpoint_fraction()[0]
    assert 2 < mid < 4


def test_classification_examples():
    assert classify(make(IntPolynomial.of([-1, -1, 0, 1]))).tag is \
        NumberTag.PISOT
    assert classify(make(LEHMER)).tag is NumberTag.SALEM
    assert classify(make(IntPolynomial.of([1, 1, 1]))).tag is \
        NumberTag.ROOT_OF_UNITY
    assert classify(make(IntPolynomial.of([-2, 0, 1]))).tag is \
        NumberTag.OTHER  # -sqrt(2) ties the modulus: not Perron
    assert classify(make(IntPolynomial.of([-5, 1]))).tag is \
        NumberTag.RATIONAL_INTEGER


def test_unit_and_fixed_point():
    zhang = make(IntPolynomial.of([-1, 1, 5, 0, 1]))
    assert is_unit(zhang)
    assert not is_unit(make(IntPolynomial.of([2, -4, 0, 1])))
    assert is_fixed_point(make(IntPolynomial.of([-1, -1, 1])))
    assert not is_fixed_point(make(IntPolynomial.of([-2, 0, 1])))


def test_negative_integer_not_fixed():
    a = make(IntPolynomial.of([5, 1]))  # root -5
    cls = classify(a)
    assert cls.tag is NumberTag.RATIONAL_INTEGER and cls.integer_value == -5
    assert not is_fixed_point(a)
    assert is_rational_integer(mahler_measure(a).value) == 5


def test_measure_of_reciprocal_polynomial_matches():
    f = IntPolynomial.of([2, -4, 0, 1])
    g = IntPolynomial.of(list(reverse(f).coeffs))
    va = mahler_measure(make(f)).value
    vb = mahler_measure(make(g)).value
    assert algebraic_equals(va, vb)


def test_measure_ball_brackets_exact_value():
    a = make(IntPolynomial.of([2, -4, 0, 1]))
    res = mahler_measure(a)
    ball = measure_ball(a, 128)
    lo = ball.midpoint_fraction()[0] - ball.rad_fraction()
    hi = ball.midpoint_fraction()[0] + ball.rad_fraction()
    mid = res.numeric.midpoint_fraction()[0]
    assert lo <= mid <= hi


def test_measure_value_is_perron_or_one():
    for coeffs in ([2, -4, 0, 1], [-1, 1, 5, 0, 1], [-3, 1, 2, 1]):
        v = mahler_measure(make(IntPolynomial.of(coeffs))).value
        tag = classify(v).tag
        assert tag in (NumberTag.RATIONAL_INTEGER, NumberTag.PISOT,
                       NumberTag.SALEM, NumberTag.PERRON_NON_FIXED)
