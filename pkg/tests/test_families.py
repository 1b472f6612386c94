"""Parametric families, the orbit-size predictor, and the large-orbit build."""

import pytest

from mahlerdyn.algnum import make
from mahlerdyn.errors import HypothesisViolated, ParameterOutOfRange
from mahlerdyn.families import (FamilySpec, b_sequence, build_large_orbit_unit,
                                check_root_localization, family_polynomial,
                                predict_orbit_size_prop4, salem_catalog,
                                theorem_st_polynomial)
from mahlerdyn.intpoly import IntPolynomial
from mahlerdyn.orbit import iterate


def test_pisot_anynorm_coefficients_and_orbit():
    inst = family_polynomial(FamilySpec("pisot_anynorm", d=4, l=3))
    assert inst.orbit_size == 1
    rec = iterate(make(inst.polynomial))
    assert rec.orbit_size == 1


def test_orbit2_family():
    inst = family_polynomial(FamilySpec("orbit2", d=3, l=2))
    assert tuple(inst.polynomial.coeffs) == (2, 8, 0, 1)
    assert inst.orbit_size == 2
    assert iterate(make(inst.polynomial)).orbit_size == 2


def test_cubic_orbit4_terminal():
    inst = family_polynomial(FamilySpec("cubic_orbit4", d=3, l=2))
    assert tuple(inst.polynomial.coeffs) == (2, -4, 0, 1)
    assert inst.terminal == 16
    rec = iterate(make(inst.polynomial))
    assert rec.orbit_size == 4
    assert rec.status.number_class.integer_value == 16


def test_quartic_orbit4_terminal():
    inst = family_polynomial(FamilySpec("quartic_orbit4", l=3))
    assert inst.terminal == 3**9
    rec = iterate(make(inst.polynomial))
    assert rec.orbit_size == 4
    assert rec.status.number_class.integer_value == 3**9


def test_sparse_orbit3():
    inst = family_polynomial(FamilySpec("sparse_orbit3", d=5, l=-2))
    assert iterate(make(inst.polynomial)).orbit_size == 3


def test_family_parameter_validation():
    with pytest.raises(ParameterOutOfRange):
        family_polynomial(FamilySpec("cubic_orbit4", d=3, l=1))
    with pytest.raises(ParameterOutOfRange):
        family_polynomial(FamilySpec("quartic_orbit4", l=2))
    with pytest.raises(ParameterOutOfRange):
        family_polynomial(FamilySpec("quartic_orbit4", l=3, d=5))
    with pytest.raises(ParameterOutOfRange):
        family_polynomial(FamilySpec("no_such_family", d=3, l=2))


def test_b_sequence_values():
    assert b_sequence(5, 3).values == (1, 3, 13)
    assert b_sequence(3, 5).values == (1, 1, 3, 5, 11)


def test_theorem_st_cubic_example():
    inst = theorem_st_polynomial(3, 3, 3)
    assert tuple(inst.polynomial.coeffs) == (3, 18, -11, 1)
    assert inst.orbit_size == 5
    assert iterate(make(inst.polynomial)).orbit_size == 5


def test_theorem_st_quintic_example():
    inst = theorem_st_polynomial(5, 3, 2)
    assert inst.orbit_size == 4
    assert iterate(make(inst.polynomial)).orbit_size == 4


def test_theorem_st_exclusions():
    with pytest.raises(ParameterOutOfRange):
        theorem_st_polynomial(3, 2, 3)
    with pytest.raises(ParameterOutOfRange):
        theorem_st_polynomial(3, -2, 3)
    with pytest.raises(ParameterOutOfRange):
        theorem_st_polynomial(4, 3, 2)


def test_predictor_agrees_with_iteration():
    inst = theorem_st_polynomial(3, 3, 3)
    assert predict_orbit_size_prop4(inst.polynomial) == 5


def test_predictor_rejects_wrong_layout():
    with pytest.raises(HypothesisViolated):
        predict_orbit_size_prop4(IntPolynomial.of([-1, -1, 1]))


def test_root_localization_report():
    report = check_root_localization(5, 3, 9)
    assert report["all"]
    assert report["sign_linkage"]
    with pytest.raises(ParameterOutOfRange):
        check_root_localization(3, 3, 5)


def test_salem_catalog_contents():
    cat = salem_catalog()
    degrees = sorted(d for d, _ in cat)
    assert degrees == [4, 6, 8, 10]
    for d, f in cat:
        assert f.degree == d


def test_build_large_orbit_unit_validation():
    with pytest.raises(ParameterOutOfRange):
        build_large_orbit_unit(2, 1)
    with pytest.raises(ParameterOutOfRange):
        build_large_orbit_unit(3, 0)


def test_build_large_orbit_unit_structure():
    built = build_large_orbit_unit(3, 1)
    assert built.polynomial.degree == 12
    assert built.ell == 6
    assert built.s_prime == 2
    assert built.orbit_size == 4
    assert built.orbit_size > 1
    assert abs(built.polynomial.coeffs[0]) == 1
