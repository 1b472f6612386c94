"""The Mahler measure operator and the fixed-point taxonomy.

M(a) = |lc| * product of the conjugates of a strictly outside the unit
circle, returned as an exact algebraic integer.  Fixed points of M are the
positive rational integers, the Pisot numbers and the Salem numbers; the
classifier here decides membership with certified root enclosures plus a few
exact tie-breaks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .algnum import (AlgebraicNumber, _refined_product, approx,
                     identify_measure_value)
from .balls import Ball
from .config import Budgets, DEFAULT_BUDGETS
from .errors import BudgetExhausted
from .intpoly import cyclotomic_check
from .rootfind import CirclePosition


class NumberTag(enum.Enum):
    RATIONAL_INTEGER = "RationalInteger"
    ROOT_OF_UNITY = "RootOfUnity"
    PISOT = "Pisot"
    SALEM = "Salem"
    PERRON_NON_FIXED = "PerronNonFixed"
    OTHER = "Other"


@dataclass(frozen=True)
class NumberClass:
    """Classification of an algebraic number with its witness counts."""

    tag: NumberTag
    outside_count: int
    on_circle_count: int
    integer_value: int | None = None

    def to_json(self) -> dict:
        out = {
            "tag": self.tag.value,
            "outside_count": self.outside_count,
            "on_circle_count": self.on_circle_count,
        }
        if self.integer_value is not None:
            out["integer_value"] = self.integer_value
        return out


@dataclass(frozen=True)
class MeasureResult:
    """Exact Mahler measure of an algebraic number plus a numeric enclosure."""

    value: AlgebraicNumber
    outside_count: int
    numeric: Ball

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "outside_count": self.outside_count,
        }


def outside_indices(a: AlgebraicNumber) -> list[int]:
    """Indices of the conjugates strictly outside the unit circle."""
    return [i for i, lab in enumerate(a.root_set.labels)
            if lab is CirclePosition.OUTSIDE]


def mahler_measure(a: AlgebraicNumber, budgets: Budgets = DEFAULT_BUDGETS,
                   coeff_bits_hint: int = None) -> MeasureResult:
    """M(a) as an exact algebraic integer.

    Roots on the unit circle never contribute; the case of no outside roots
    degenerates to the integer |lc| (which is 1 exactly for roots of unity,
    by Kronecker's theorem).
    """
    out = outside_indices(a)
    value = identify_measure_value(a, out, budgets, coeff_bits_hint)
    numeric = approx(value, Fraction(1, 2**64))
    return MeasureResult(value=value, outside_count=len(out), numeric=numeric)


def measure_ball(a: AlgebraicNumber, bits: int = 64,
                 budgets: Budgets = DEFAULT_BUDGETS) -> Ball:
    """Certified real enclosure of M(a) without exact identification.

    Cheap companion to mahler_measure for numeric cross-checks (growth,
    monotonicity) where the minimal polynomial of the value is not needed.
    """
    out = outside_indices(a)
    _, vball = _refined_product(a.root_set, out, bits,
                                budgets.precision_ceiling)
    return vball


def classify(a: AlgebraicNumber,
             budgets: Budgets = DEFAULT_BUDGETS) -> NumberClass:
    """Exact taxonomy: integer / root of unity / Pisot / Salem / Perron."""
    f = a.minpoly
    rs = a.root_set
    n_out = rs.count(CirclePosition.OUTSIDE)
    n_on = rs.count(CirclePosition.ON_CIRCLE)

    if f.degree == 1 and f.lc == 1:
        return NumberClass(NumberTag.RATIONAL_INTEGER, n_out, n_on,
                           integer_value=-f.constant)
    if n_on == f.degree:
        # Kronecker: an algebraic integer with all conjugates on the circle
        # is a root of unity; the cyclotomic check is a defensive assertion
        assert f.is_monic() and cyclotomic_check(f), f
        return NumberClass(NumberTag.ROOT_OF_UNITY, n_out, n_on)

    i = a.root_index
    # outside-circle balls exclude the unit disc, so the center sign is the
    # sign of the root itself
    real_above_one = (f.is_monic() and rs.is_real[i]
                      and rs.labels[i] is CirclePosition.OUTSIDE
                      and rs.roots[i].re > 0)
    if real_above_one:
        if n_out == 1 and n_on == 0:
            return NumberClass(NumberTag.PISOT, n_out, n_on)
        if n_out == 1 and n_on >= 1:
            return NumberClass(NumberTag.SALEM, n_out, n_on)
        if _modulus_dominant(a, budgets):
            return NumberClass(NumberTag.PERRON_NON_FIXED, n_out, n_on)
    return NumberClass(NumberTag.OTHER, n_out, n_on)


def _modulus_dominant(a: AlgebraicNumber, budgets: Budgets) -> bool:
    """Certify |a| strictly above the modulus of every other conjugate."""
    f = a.minpoly
    # exact tie with -a: f(-x) proportional to f means -a is a conjugate
    neg = tuple(c if j % 2 == 0 else -c for j, c in enumerate(f.coeffs))
    if neg == f.coeffs or tuple(-c for c in neg) == f.coeffs:
        return False
    from .rootfind import refine

    rs = a.root_set
    target = Fraction(1, 2**32)
    while True:
        asq = rs.roots[a.root_index].square_modulus()
        undecided = False
        for j, b in enumerate(rs.roots):
            if j == a.root_index:
                continue
            diff = asq - b.square_modulus()
            if diff.contains_zero():
                undecided = True
                break
            if diff.re < 0:
                return False
        if not undecided:
            return True
        try:
            rs = refine(rs, target, budgets.precision_ceiling)
        except BudgetExhausted:
            return False
        target /= 2**32


def is_unit(a: AlgebraicNumber) -> bool:
    """Algebraic unit: monic minimal polynomial with constant term +-1."""
    return a.minpoly.is_monic() and abs(a.minpoly.constant) == 1


def is_fixed_point(a: AlgebraicNumber,
                   budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """M(a) = a, decided by classification alone."""
    cls = classify(a, budgets)
    if cls.tag is NumberTag.RATIONAL_INTEGER:
        return cls.integer_value >= 1
    return cls.tag in (NumberTag.PISOT, NumberTag.SALEM)
