"""Randomized invariants of the measure on a seeded polynomial sample."""

import random
from fractions import Fraction

from mahlerdyn.algnum import AlgebraicNumber, algebraic_equals, make
from mahlerdyn.intpoly import IntPolynomial, factor, reverse, \
    unit_circle_root_count
from mahlerdyn.mahler import NumberTag, classify, mahler_measure, measure_ball
from mahlerdyn.rootfind import classify_against_unit_circle


def random_irreducibles(count, max_degree=5, height=8, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.randint(2, max_degree)
        coeffs = [rng.randint(-height, height) for _ in range(d)] + [1]
        if coeffs[0] == 0:
            continue
        f = IntPolynomial.of(coeffs)
        facs = factor(f)
        if len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree == d:
            out.append(f)
    return out


SAMPLE = random_irreducibles(40)


def test_measure_at_least_one():
    for f in SAMPLE[:20]:
        res = mahler_measure(make(f))
        lo = res.numeric.midpoint_fraction()[0] - res.numeric.rad_fraction()
        assert lo > Fraction(99, 100)


def test_reciprocal_invariance():
    for f in SAMPLE[:15]:
        g = reverse(f)
        if g.degree != f.degree or not g.coeffs[-1] > 0:
            continue
        facs = factor(g)
        if len(facs) != 1 or facs[0][1] != 1:
            continue
        a = mahler_measure(make(f))
        b = mahler_measure(make(g))
        assert algebraic_equals(a.value, b.value)


def test_conjugate_independence():
    for f in SAMPLE[:8]:
        values = [mahler_measure(make(f, i)).value
                  for i in range(f.degree)]
        for v in values[1:]:
            assert algebraic_equals(values[0], v)


def test_ball_brackets_identified_value():
    for f in SAMPLE[:12]:
        a = make(f)
        res = mahler_measure(a)
        ball = measure_ball(a, 96)
        lo = ball.midpoint_fraction()[0] - ball.rad_fraction()
        hi = ball.midpoint_fraction()[0] + ball.rad_fraction()
        mid = res.numeric.midpoint_fraction()[0]
        rad = res.numeric.rad_fraction()
        assert mid - rad <= hi and lo <= mid + rad


def test_circle_count_cross_check():
    for f in SAMPLE[:20]:
        rs = classify_against_unit_circle(f, 2**16)
        on = sum(1 for lab in rs.labels if lab.name == "ON_CIRCLE")
        assert on == unit_circle_root_count(f)


def test_kronecker_dichotomy():
    for f in SAMPLE[:20]:
        res = mahler_measure(make(f))
        cls = classify(res.value)
        if res.outside_count == 0:
            assert cls.tag is NumberTag.RATIONAL_INTEGER
            assert cls.integer_value == 1
        else:
            lo = (res.numeric.midpoint_fraction()[0]
                  - res.numeric.rad_fraction())
            assert lo > 1
