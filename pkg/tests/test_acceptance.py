"""End-to-end acceptance checks.

Each test prints a single pass/fail line for its criterion on the real
stdout so the verdicts are visible even under pytest capture.
"""

import contextlib
import math
import multiprocessing
import random
import time

import pytest

from mahlerdyn.algnum import algebraic_equals, make
from mahlerdyn.config import Budgets
from mahlerdyn.errors import ParameterOutOfRange
from mahlerdyn.families import (FAMILY_NAMES, FamilySpec, b_sequence,
                                build_large_orbit_unit,
                                check_root_localization, family_polynomial,
                                predict_orbit_size_prop4,
                                theorem_st_polynomial)
from mahlerdyn.intpoly import (IntPolynomial, cyclotomic_check, factor,
                               reverse, unit_circle_root_count)
from mahlerdyn.mahler import NumberTag, classify, mahler_measure, measure_ball
from mahlerdyn.orbit import (certify_wandering_alternating,
                             detect_square_relations, iterate)
from mahlerdyn.cli import census_polynomials


def _emit(capfd, line):
    with capfd.disabled():
        print(line, flush=True)


@contextlib.contextmanager
def criterion(capfd, number, description, limit_seconds):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        _emit(capfd, "criterion %d (%s): FAIL" % (number, description))
        raise
    elapsed = time.monotonic() - start
    ok = elapsed < limit_seconds
    _emit(capfd, "criterion %d (%s): %s  [%.1fs]"
          % (number, description, "PASS" if ok else "FAIL", elapsed))
    assert ok, "exceeded %ds time limit: %.1fs" % (limit_seconds, elapsed)


def test_criterion_1_lehmer_fixed_point(capfd):
    with criterion(capfd, 1, "Lehmer polynomial is a Salem fixed point",
                   5 * 60):
        f = IntPolynomial.of([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
        a = make(f)
        rec = iterate(a)
        assert rec.orbit_size == 1
        res = mahler_measure(a)
        mid = res.numeric.midpoint_fraction()[0]
        rad = res.numeric.rad_fraction()
        assert abs(mid - 1.17628) <= 1e-4 + rad
        assert classify(res.value).tag is NumberTag.SALEM


def test_criterion_2_family_grid(capfd):
    with criterion(capfd, 2, "family grid reaches predicted orbit sizes",
                   5 * 60):
        ran = {name: 0 for name in FAMILY_NAMES if name not in ("thm_st",
                                                               "deg12")}
        for name in ran:
            for d in range(3, 9):
                for l in list(range(-5, -1)) + list(range(2, 6)):
                    try:
                        inst = family_polynomial(FamilySpec(name, d=d, l=l))
                    except ParameterOutOfRange:
                        continue
                    rec = iterate(make(inst.polynomial))
                    assert rec.orbit_size == inst.orbit_size, (name, d, l)
                    if inst.terminal is not None:
                        assert (rec.status.number_class.integer_value
                                == inst.terminal), (name, d, l)
                    ran[name] += 1
        assert all(count > 0 for count in ran.values()), ran


def _thm_st_grid():
    for d in range(3, 7):
        for l in list(range(-4, -1)) + list(range(2, 5)):
            for c in range(2, 6):
                try:
                    yield theorem_st_polynomial(d, l, c), d, l, c
                except ParameterOutOfRange:
                    continue


def test_criterion_3_orbit_size_theorem_grid(capfd):
    with criterion(capfd, 3, "orbit sizes on the sparse cubic-to-sextic grid",
                   10 * 60):
        count = 0
        for inst, d, l, c in _thm_st_grid():
            assert inst.orbit_size == c + 2
            predicted = predict_orbit_size_prop4(inst.polynomial)
            assert predicted == c + 2, (d, l, c)
            rec = iterate(make(inst.polynomial))
            assert rec.orbit_size == c + 2, (d, l, c)
            count += 1
        assert count >= 50


def test_criterion_4_root_localization_grid(capfd):
    with criterion(capfd, 4, "certified root localization on the same grid",
                   10 * 60):
        count = 0
        for _, d, l, c in _thm_st_grid():
            n = abs(l) ** (b_sequence(d, c).values[-1] - 1)
            report = check_root_localization(d, l, n)
            assert report["all"], (d, l, c)
            count += 1
        assert count >= 50


def _census_outcome(coeffs):
    rec = iterate(make(IntPolynomial.of(list(coeffs))))
    status = rec.status
    if status.tag == "FixedPointReached":
        return coeffs, "fixed", rec.orbit_size, True
    if status.tag == "CertifiedInfinite":
        return (coeffs, "infinite", status.reason,
                bool(status.certificate.squared_identity))
    return coeffs, status.tag, None, False


def test_criterion_5_quartic_unit_census(capfd):
    with criterion(capfd, 5, "degree-4 unit census fully resolved",
                   10 * 60):
        polys = census_polynomials(4, 4, unit_only=True)
        assert len(polys) == 329
        with multiprocessing.Pool(4) as pool:
            results = pool.map(_census_outcome,
                               [tuple(f.coeffs) for f in polys], chunksize=8)
        for coeffs, kind, detail, identity_ok in results:
            if kind == "fixed":
                assert detail in (1, 2), coeffs
            else:
                assert kind == "infinite", (coeffs, kind)
                assert detail == "Deg4Trichotomy", coeffs
                assert identity_ok, coeffs
        kinds = {k for _, k, _, _ in results}
        assert kinds == {"fixed", "infinite"}


def test_criterion_6_quartic_square_relations(capfd):
    with criterion(capfd, 6,
                   "quartic orbit shows the doubling square relations",
                   60):
        rec = iterate(make(IntPolynomial.of([-1, 1, 5, 0, 1])), min_steps=6)
        rels = detect_square_relations(rec)
        assert {(n + 2, n) for n in range(1, 5)} <= set(rels)


def test_criterion_7_degree_six_orbit_five(capfd):
    with criterion(capfd, 7, "degree-6 unit reaches a fixed point in five steps",
                   60):
        rec = iterate(make(IntPolynomial.of([-1, -4, -2, 0, -4, -1, 1])))
        assert rec.orbit_size == 5
        assert rec.status.tag == "FixedPointReached"


def test_criterion_8_quintic_certified_wandering(capfd):
    with criterion(capfd, 8, "wandering quintic certified via its Galois group",
                   2 * 60):
        a = make(IntPolynomial.of([-1, -1, 0, 0, 0, 1]))
        cert = certify_wandering_alternating(a)
        assert cert is not None and cert.galois.certified
        rec = iterate(a, min_steps=5)
        assert rec.status.tag == "CertifiedInfinite"
        assert rec.status.reason == "AlternatingGroup"
        logs = rec.log_values
        assert len(logs) >= 6
        assert all(y > x for x, y in zip(logs[1:], logs[2:]))


def test_criterion_9_degree_twelve_constructions(capfd):
    with criterion(capfd, 9, "degree-12 units with prescribed large orbits",
                   10 * 60):
        budgets = Budgets(precision_ceiling=2**24)
        expectations = {1: None, 2: None, 3: (21, 4, 6)}
        for S in (1, 2, 3):
            built = build_large_orbit_unit(3, S, budgets)
            assert built.polynomial.degree == 12
            assert built.orbit_size == built.s_prime + 2
            assert built.orbit_size > S
            if expectations[S] is not None:
                ell, s_prime, orbit = expectations[S]
                assert built.ell == ell
                assert built.s_prime == s_prime
                assert built.orbit_size == orbit
            rec = iterate(built.number, budgets)
            assert rec.orbit_size == built.orbit_size, S
            assert rec.status.tag == "FixedPointReached", S


def _random_irreducibles(count, rng):
    out = []
    while len(out) < count:
        d = rng.randint(2, 6)
        coeffs = [rng.randint(-10, 10) for _ in range(d)] + [1]
        if coeffs[0] == 0:
            continue
        f = IntPolynomial.of(coeffs)
        facs = factor(f)
        if len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree == d:
            out.append(f)
    return out


def test_criterion_10_randomized_invariants(capfd):
    with criterion(capfd, 10, "measure invariants on 500 random polynomials",
                   10 * 60):
        rng = random.Random(20260826)
        for f in _random_irreducibles(500, rng):
            a = make(f)
            res = mahler_measure(a)
            mid = res.numeric.midpoint_fraction()[0]
            rad = res.numeric.rad_fraction()

            # M >= 1, with equality exactly in the cyclotomic case
            if res.outside_count == 0:
                cls = classify(res.value)
                assert cls.tag is NumberTag.RATIONAL_INTEGER
                assert cls.integer_value == 1
                assert cyclotomic_check(f)
            else:
                assert mid - rad > 1
                assert not cyclotomic_check(f)

            # the measure value is Perron (or 1)
            assert classify(res.value).tag in (
                NumberTag.RATIONAL_INTEGER, NumberTag.PISOT, NumberTag.SALEM,
                NumberTag.PERRON_NON_FIXED)

            # inversion invariance: alpha and 1/alpha share their measure
            g = reverse(f)
            if g.degree == f.degree:
                res_inv = mahler_measure(make(g))
                assert algebraic_equals(res.value, res_inv.value)

            # applying the measure again never decreases the value
            ball = measure_ball(res.value, 64)
            hi2 = ball.midpoint_fraction()[0] + ball.rad_fraction()
            assert hi2 >= mid - rad

            # ball root labels agree with the exact circle-root count
            assert sum(1 for lab in a.root_set.labels
                       if lab.name == "ON_CIRCLE") == unit_circle_root_count(f)
