"""Orbit iteration of the Mahler measure with sound wandering certificates.

The orbit of an algebraic number under M either reaches a fixed point
(positive integer, Pisot, or Salem), or grows forever.  No finite
computation proves wandering in general, so infinite orbits are only ever
reported together with a certificate:

  * degree-4 trichotomy: a degree-4 unit whose orbit shows more than two
    distinct values satisfies M^(3) = M^(1) squared and wanders;
  * alternating group: a unit of degree >= 5 whose Galois group provably
    contains A_d and which is not conjugate to +-(a Pisot number)^{+-1}.

Anything else that fails to terminate within budget reports BudgetExhausted
with the partial orbit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algnum import AlgebraicNumber, algebraic_equals
from .config import Budgets, DEFAULT_BUDGETS
from .errors import (BudgetExhausted, CombinatorialBudgetExceeded,
                     DegreeCapExceeded, NotApplicable)
from .galois import AlternatingCertificate, contains_alternating_certificate
from .intpoly import IntPolynomial, factor, power_composite, reverse
from .mahler import NumberClass, NumberTag, classify, is_unit, mahler_measure
from .rootfind import classify_against_unit_circle, refine


@dataclass(frozen=True)
class Deg4Certificate:
    """Trichotomy witness: three distinct orbit values plus the exact
    identity M^(3) = (M^(1))^2."""

    distinct_values_observed: int
    squared_identity: bool


@dataclass(frozen=True)
class AlternatingWanderingCertificate:
    """A_d-containment witness plus Pisot exclusion on all four transforms."""

    galois: AlternatingCertificate
    excluded_transforms: tuple[IntPolynomial, ...]


@dataclass(frozen=True)
class OrbitStatus:
    tag: str  # FixedPointReached | CertifiedInfinite | BudgetExhausted
    number_class: NumberClass | None = None
    reason: str | None = None  # Deg4Trichotomy | AlternatingGroup
    certificate: object = None
    limit: str | None = None

    def to_json(self) -> dict:
        out = {"tag": self.tag}
        if self.number_class is not None:
            out["number_class"] = self.number_class.to_json()
        if self.reason is not None:
            out["reason"] = self.reason
        if self.limit is not None:
            out["limit"] = self.limit
        return out


@dataclass
class OrbitRecord:
    """Recorded orbit: step 0 is the input, step n is M^(n) of it."""

    steps: list[AlgebraicNumber]
    status: OrbitStatus
    square_relations: list[tuple[int, int]] = field(default_factory=list)
    log_values: list[float] = field(default_factory=list)

    @property
    def orbit_size(self) -> int:
        if self.status.tag == "FixedPointReached":
            return len(self.steps) - 1
        return len(self.steps)

    def to_json(self) -> dict:
        return {
            "input": list(self.steps[0].minpoly.coeffs),
            "steps": [{
                "n": n,
                "minpoly": list(s.minpoly.coeffs),
                "degree": s.degree,
                "approx": s.root_set.to_json()[s.root_index],
            } for n, s in enumerate(self.steps)],
            "status": self.status.to_json(),
            "orbit_size": (self.orbit_size
                           if self.status.tag != "BudgetExhausted" else None),
            "square_relations": self.square_relations,
            "log_values": self.log_values,
        }


def _log_of_step(a: AlgebraicNumber) -> float:
    re, im = a.root_box.midpoint_fraction()
    sq = re * re + im * im
    if sq == 0:
        return float("-inf")
    return 0.5 * (math.log(sq.numerator) - math.log(sq.denominator))


def _conj_closed(rs, index: int) -> list[int]:
    return sorted({index, rs.conj_pair[index]})


def square_value(a: AlgebraicNumber,
                 budgets: Budgets = DEFAULT_BUDGETS) -> AlgebraicNumber:
    """The algebraic number a^2 with its exact minimal polynomial."""
    g = power_composite(a.minpoly, 2)
    facs = [h for h, _ in factor(g) if h.degree >= 1]
    sets = [classify_against_unit_circle(h, budgets.precision_ceiling)
            for h in facs]
    bits = 64
    rs = a.root_set
    while bits <= budgets.precision_ceiling:
        rs = refine(rs, Fraction(1, 2**bits), budgets.precision_ceiling,
                    indices=_conj_closed(rs, a.root_index))
        vball = rs.roots[a.root_index] * rs.roots[a.root_index]
        hits = []
        for fi in range(len(facs)):
            sets[fi] = refine(sets[fi], Fraction(1, 2**bits),
                              budgets.precision_ceiling)
            for ri, b in enumerate(sets[fi].roots):
                if not b.is_disjoint(vball):
                    hits.append((fi, ri))
        if len(hits) == 1:
            fi, ri = hits[0]
            return AlgebraicNumber(facs[fi], sets[fi].roots[ri], ri, sets[fi])
        bits *= 2
    raise BudgetExhausted("could not isolate the square of %r" % (a,))


def certify_wandering_deg4(a: AlgebraicNumber, steps,
                           budgets: Budgets = DEFAULT_BUDGETS):
    """Infinity certificate for a degree-4 unit with > 2 observed values.

    Returns None when the partial orbit shows no third value (the orbit may
    simply be finite of size <= 2); raises NotApplicable off-domain.
    """
    if a.degree != 4 or not is_unit(a):
        raise NotApplicable("degree-4 trichotomy needs a degree-4 unit")
    distinct = len(steps)
    if distinct < 4:
        return None
    sq = square_value(steps[1], budgets)
    identity = algebraic_equals(steps[3], sq)
    if not identity:
        return None
    return Deg4Certificate(distinct_values_observed=distinct,
                           squared_identity=True)


def _pisot_transforms(f: IntPolynomial) -> list[IntPolynomial]:
    flipped = IntPolynomial.of([c if i % 2 == 0 else -c
                                for i, c in enumerate(f.coeffs)])
    return [f, IntPolynomial.of(reverse(f).coeffs), flipped,
            IntPolynomial.of(reverse(flipped).coeffs)]


def certify_wandering_alternating(a: AlgebraicNumber,
                                  budgets: Budgets = DEFAULT_BUDGETS,
                                  prime_budget: int = None):
    """Infinity certificate via A_d containment plus Pisot exclusion."""
    if a.degree < 5 or not is_unit(a):
        raise NotApplicable("needs an algebraic unit of degree >= 5")
    gal = contains_alternating_certificate(a.minpoly, prime_budget)
    if not gal.certified:
        return None
    transforms = _pisot_transforms(a.minpoly)
    for g in transforms:
        grs = classify_against_unit_circle(g, budgets.precision_ceiling)
        top = AlgebraicNumber(g, grs.roots[0], 0, grs)
        if classify(top, budgets).tag is NumberTag.PISOT:
            return None
    return AlternatingWanderingCertificate(
        galois=gal, excluded_transforms=tuple(transforms))


def _coeff_bits_hint(f: IntPolynomial) -> int:
    return 4 * max(abs(c).bit_length() for c in f.coeffs) + 64


def iterate(a: AlgebraicNumber, budgets: Budgets = DEFAULT_BUDGETS,
            min_steps: int = 0) -> OrbitRecord:
    """Iterate M until a fixed point, a wandering certificate, or a budget.

    min_steps forces at least that many iterations to be recorded even after
    a certificate fires (useful for growth and square-relation checks).
    """
    steps = [a]
    certificate = None
    reason = None

    if a.degree >= 5 and is_unit(a):
        alt = certify_wandering_alternating(a, budgets)
        if alt is not None:
            certificate, reason = alt, "AlternatingGroup"

    deg4 = a.degree == 4 and is_unit(a)
    status = None
    while True:
        if certificate is not None and len(steps) - 1 >= min_steps:
            status = OrbitStatus("CertifiedInfinite", reason=reason,
                                 certificate=certificate)
            break
        if len(steps) - 1 >= budgets.max_iter:
            status = OrbitStatus("BudgetExhausted", limit="max_iter")
            break
        cur = steps[-1]
        try:
            res = mahler_measure(cur, budgets, _coeff_bits_hint(cur.minpoly))
        except (BudgetExhausted, CombinatorialBudgetExceeded,
                DegreeCapExceeded) as exc:
            status = OrbitStatus("BudgetExhausted", limit=type(exc).__name__)
            break
        steps.append(res.value)
        if algebraic_equals(res.value, cur):
            status = OrbitStatus("FixedPointReached",
                                 number_class=classify(res.value, budgets))
            break
        if deg4 and certificate is None and len(steps) >= 4:
            cert = certify_wandering_deg4(a, steps, budgets)
            if cert is not None:
                certificate, reason = cert, "Deg4Trichotomy"

    return OrbitRecord(steps=steps, status=status,
                       log_values=[_log_of_step(s) for s in steps])


def detect_square_relations(record: OrbitRecord,
                            budgets: Budgets = DEFAULT_BUDGETS):
    """All pairs (n, m) with M^(n) = (M^(m))^2, by exact identification."""
    steps = record.steps
    relations = []
    for m in range(1, len(steps) - 1):
        try:
            sq = square_value(steps[m], budgets)
        except BudgetExhausted:
            continue
        for n in range(m + 1, len(steps)):
            if steps[n].minpoly == sq.minpoly and algebraic_equals(steps[n],
                                                                   sq):
                relations.append((n, m))
    record.square_relations = relations
    return relations


def verify_log_recursion(record: OrbitRecord,
                         budgets: Budgets = DEFAULT_BUDGETS):
    """Recursion satisfied by the log of the orbit values, when one is known.

    Fixed points satisfy a_{n+1} = a_n trivially; certified-wandering
    degree-4 orbits satisfy a_{n+1} = 2 a_{n-1}, verified here as the exact
    algebraic identity M^(n+1) = (M^(n-1))^2 for every recorded n >= 2.
    """
    if record.status.tag == "FixedPointReached":
        return {"recursion": "a_{n+1} = a_n", "verified_n": []}
    if (record.status.tag == "CertifiedInfinite"
            and record.status.reason == "Deg4Trichotomy"):
        verified = []
        for n in range(2, len(record.steps) - 1):
            sq = square_value(record.steps[n - 1], budgets)
            if not algebraic_equals(record.steps[n + 1], sq):
                return None
            verified.append(n)
        return {"recursion": "a_{n+1} = 2 a_{n-1}", "verified_n": verified}
    return None
