"""Certified root isolation: disjoint balls, circle labels, refinement."""

from fractions import Fraction

import pytest

from mahlerdyn.errors import NotSquarefree
from mahlerdyn.intpoly import IntPolynomial
from mahlerdyn.rootfind import (CirclePosition, classify_against_unit_circle,
                                isolate_roots, refine)

LEHMER = IntPolynomial.of([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


def test_sqrt2_roots_and_labels():
    rs = isolate_roots(IntPolynomial.of([-2, 0, 1]))
    assert len(rs.roots) == 2
    assert all(lab is CirclePosition.OUTSIDE for lab in rs.labels)
    assert all(rs.is_real)
    re0 = float(rs.roots[0].midpoint_fraction()[0])
    assert abs(abs(re0) - 2**0.5) < 1e-9


def test_lehmer_circle_counts():
    rs = classify_against_unit_circle(LEHMER)
    assert rs.count(CirclePosition.OUTSIDE) == 1
    assert rs.count(CirclePosition.ON_CIRCLE) == 8
    assert rs.count(CirclePosition.INSIDE) == 1
    # descending modulus ordering puts the Salem root first
    assert rs.is_real[0] and rs.roots[0].re > 1


def test_balls_are_disjoint():
    f = IntPolynomial.of([2, -4, 0, 1])
    rs = isolate_roots(f)
    for i in range(len(rs.roots)):
        for j in range(i + 1, len(rs.roots)):
            assert rs.roots[i].is_disjoint(rs.roots[j])


def test_refine_nests_and_shrinks():
    f = IntPolynomial.of([2, -4, 0, 1])
    rs = isolate_roots(f)
    target = Fraction(1, 2**200)
    fine = refine(rs, target)
    for old, new in zip(rs.roots, fine.roots):
        assert new.rad_at_most(target)
        assert old.contains_ball(new)


def test_refine_selected_indices_only():
    rs = isolate_roots(LEHMER)
    target = Fraction(1, 2**300)
    fine = refine(rs, target, indices=[0])
    assert fine.roots[0].rad_at_most(target)


def test_conjugate_pairs_are_marked():
    f = IntPolynomial.of([1, 0, 0, 1])  # x^3 + 1
    rs = isolate_roots(f)
    reals = [i for i in range(3) if rs.is_real[i]]
    assert len(reals) == 1
    i, j = [k for k in range(3) if not rs.is_real[k]]
    assert rs.conj_pair[i] == j and rs.conj_pair[j] == i


def test_huge_modulus_spread():
    # roots near 2^40 and near 2^-40: Newton-polygon starts must cope
    f = IntPolynomial.exact([1, -(2**40), 1])
    rs = isolate_roots(f)
    assert rs.count(CirclePosition.OUTSIDE) == 1
    assert rs.count(CirclePosition.INSIDE) == 1


def test_squarefree_required():
    f = IntPolynomial.exact([1, 2, 1])  # (x+1)^2
    with pytest.raises(NotSquarefree):
        isolate_roots(f)
