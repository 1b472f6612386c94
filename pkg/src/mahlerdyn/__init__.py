"""Exact iteration of the Mahler measure on algebraic numbers."""

from mahlerdyn.algnum import AlgebraicNumber, algebraic_equals, make
from mahlerdyn.config import DEFAULT_BUDGETS, Budgets
from mahlerdyn.intpoly import IntPolynomial, factor, parse_poly
from mahlerdyn.mahler import (MeasureResult, NumberClass, NumberTag, classify,
                              mahler_measure, measure_ball)
from mahlerdyn.orbit import OrbitRecord, iterate

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber", "Budgets", "DEFAULT_BUDGETS", "IntPolynomial",
    "MeasureResult", "NumberClass", "NumberTag", "OrbitRecord",
    "algebraic_equals", "classify", "factor", "iterate", "mahler_measure",
    "make", "measure_ball", "parse_poly",
]
