"""Polynomial families with proved Mahler-orbit sizes.

Six explicit one-parameter families (orbit sizes 1 through 4), the
three-parameter family with orbit size c + 2 driven by the b-sequence, a
predictor for that orbit size from certified root data, root-localization
checks for the same family, and the degree-4k construction that realizes
arbitrarily large finite orbit sizes from a Salem number times a real
quadratic unit.
"""

from __future__ import annotations

import importlib.resources
import json
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import sympy
from gmpy2 import mpfr

from .algnum import AlgebraicNumber
from .balls import Ball, _mpfr_to_fraction
from .config import Budgets, DEFAULT_BUDGETS
from .errors import (BudgetExhausted, CatalogMissingDegree, DegreeCollapse,
                     HypothesisUndecidable, HypothesisViolated,
                     ParameterOutOfRange)
from .intpoly import (IntPolynomial, discriminant, factor, is_irreducible,
                      power_composite, product_composite)
from .mahler import NumberTag, classify
from .rootfind import CirclePosition, classify_against_unit_circle, refine

FAMILY_NAMES = ("pisot_anynorm", "orbit2", "cubic_orbit4", "cubic_orbit3",
                "quartic_orbit4", "sparse_orbit3", "thm_st", "deg12")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    d: int | None = None
    l: int | None = None
    c: int | None = None
    k: int | None = None
    S: int | None = None


@dataclass(frozen=True)
class FamilyInstance:
    polynomial: IntPolynomial
    orbit_size: int
    terminal: int | None = None


@dataclass(frozen=True)
class BSequence:
    d: int
    values: tuple[int, ...]


@dataclass(frozen=True)
class LargeOrbitUnit:
    polynomial: IntPolynomial
    orbit_size: int
    ell: int
    s_prime: int
    salem: IntPolynomial
    quadratic_unit: IntPolynomial
    prime: int
    number: AlgebraicNumber


def _need_l(spec: FamilySpec) -> int:
    l = spec.l
    if l is None or not isinstance(l, int) or abs(l) <= 1:
        raise ParameterOutOfRange("norm parameter l must be an integer "
                                  "with |l| >= 2, got %r" % (l,))
    return l


def _need_degree(spec: FamilySpec, fixed: int = None, minimum: int = None):
    d = spec.d
    if fixed is not None:
        if d is not None and d != fixed:
            raise ParameterOutOfRange("family %s has fixed degree %d"
                                      % (spec.name, fixed))
        return fixed
    if d is None or d < minimum:
        raise ParameterOutOfRange("family %s needs degree >= %d, got %r"
                                  % (spec.name, minimum, d))
    return d


def _flip_variable(coeffs) -> IntPolynomial:
    """(-1)^deg * f(-x): same root moduli, real roots negated."""
    n = len(coeffs) - 1
    sign = 1 if n % 2 == 0 else -1
    return IntPolynomial.exact([sign * (c if i % 2 == 0 else -c)
                                for i, c in enumerate(coeffs)])


def family_polynomial(spec: FamilySpec) -> FamilyInstance:
    """The exact family member plus its proved orbit size."""
    name = spec.name
    if name == "pisot_anynorm":
        l = _need_l(spec)
        d = _need_degree(spec, minimum=2)
        coeffs = [l] + [0] * (d - 2) + [l * l, 1]
        # the dominant root of x^d + l^2 x^{d-1} + l is near -l^2; flip the
        # variable so the Pisot fixed point is the positive real root
        return FamilyInstance(_flip_variable(coeffs), orbit_size=1)
    if name == "orbit2":
        l = _need_l(spec)
        d = _need_degree(spec, minimum=2)
        coeffs = [l, l**d] + [0] * (d - 2) + [1]
        return FamilyInstance(IntPolynomial.exact(coeffs), orbit_size=2)
    if name == "cubic_orbit4":
        l = _need_l(spec)
        _need_degree(spec, fixed=3)
        return FamilyInstance(IntPolynomial.exact([l, -l * l, 0, 1]),
                              orbit_size=4, terminal=l**4)
    if name == "cubic_orbit3":
        l = _need_l(spec)
        _need_degree(spec, fixed=3)
        return FamilyInstance(IntPolynomial.exact([-l, 0, l, 1]),
                              orbit_size=3)
    if name == "quartic_orbit4":
        l = _need_l(spec)
        _need_degree(spec, fixed=4)
        if l in (-1, 0, 1, 2):
            raise ParameterOutOfRange(
                "quartic family requires l >= 3 or l <= -2, got %d" % l)
        return FamilyInstance(
            IntPolynomial.exact([l, l * l - l, -l * l, 0, 1]),
            orbit_size=4, terminal=abs(l)**9)
    if name == "sparse_orbit3":
        l = _need_l(spec)
        d = _need_degree(spec, minimum=4)
        coeffs = [l, -l**(d - 2)] + [0] * (d - 2) + [1]
        return FamilyInstance(IntPolynomial.exact(coeffs), orbit_size=3)
    if name == "thm_st":
        return theorem_st_polynomial(spec.d, spec.l, spec.c)
    raise ParameterOutOfRange("unknown family %r (choose from %s)"
                              % (name, ", ".join(FAMILY_NAMES)))


def b_sequence(d: int, n: int) -> BSequence:
    """b_1 = 1, b_j = b_{j-1} (d-1) + (-1)^{j-1}, with the closed form
    b_j = ((d-1)^j + (-1)^{j-1}) / d checked for every entry."""
    if d < 3 or n < 1:
        raise ParameterOutOfRange("b-sequence needs d >= 3 and n >= 1")
    values = [1]
    for j in range(2, n + 1):
        values.append(values[-1] * (d - 1) + (-1)**(j - 1))
    for j, b in enumerate(values, start=1):
        assert b * d == (d - 1)**j + (-1)**(j - 1), (d, j, b)
    return BSequence(d, tuple(values))


def theorem_st_polynomial(d: int, l: int, c: int) -> FamilyInstance:
    """x (x^{d-2} - 2)(x - n) + l with n = |l|^{b_c - 1}; orbit size c + 2."""
    if d is None or d < 3:
        raise ParameterOutOfRange("need degree d >= 3, got %r" % (d,))
    if l is None or abs(l) <= 1:
        raise ParameterOutOfRange("need |l| >= 2, got %r" % (l,))
    if (d, l) in ((3, 2), (3, -2)):
        raise ParameterOutOfRange("the tuple (d, l) = (3, +-2) is excluded")
    if c is None or c < 2:
        raise ParameterOutOfRange("need c >= 2, got %r" % (c,))
    if c == 2 and d in (3, 4):
        raise ParameterOutOfRange("c = 2 is excluded for d in {3, 4}")
    bc = b_sequence(d, c).values[-1]
    n = abs(l)**(bc - 1)
    if n < abs(l) + 3:
        raise ParameterOutOfRange(
            "n = |l|^(b_c - 1) = %d violates n >= |l| + 3" % n)
    x = IntPolynomial.exact([0, 1])
    mid = IntPolynomial.exact([-2] + [0] * (d - 3) + [1])
    f = x * mid * IntPolynomial.exact([-n, 1]) + IntPolynomial.exact([l])
    return FamilyInstance(f, orbit_size=c + 2)


# ---------------------------------------------------------------------------
# orbit-size predictor


def _real_ball_bounds(b: Ball) -> tuple[Fraction, Fraction]:
    re = b.midpoint_fraction()[0]
    rad = b.rad_fraction()
    return re - rad, re + rad


def _abs_bounds(b: Ball) -> tuple[Fraction, Fraction]:
    """Fraction enclosure of |z|^2 for any ball, via the square modulus."""
    sq = b.square_modulus()
    lo, hi = _real_ball_bounds(sq)
    return max(lo, Fraction(0)), hi


def predict_orbit_size_prop4(f: IntPolynomial,
                             budgets: Budgets = DEFAULT_BUDGETS) -> int:
    """Orbit size c + 2 read off the b-sequence threshold scan.

    Hypotheses checked with certified roots: monic non-unit of degree >= 3,
    a strictly dominant root, exactly one root inside the unit circle and
    none on it, and every non-dominant root of modulus at most |norm|.
    """
    d = f.degree
    if d < 3 or not f.is_monic():
        raise HypothesisViolated("needs a monic polynomial of degree >= 3")
    N = abs(f.constant)
    if N <= 1:
        raise HypothesisViolated("needs |norm| >= 2, got %d" % N)
    if not is_irreducible(f):
        raise HypothesisViolated("needs an irreducible polynomial")
    rs = classify_against_unit_circle(f, budgets.precision_ceiling)
    if rs.count(CirclePosition.ON_CIRCLE) != 0 or \
            rs.count(CirclePosition.INSIDE) != 1 or \
            rs.labels[-1] is not CirclePosition.INSIDE:
        raise HypothesisViolated(
            "root layout must be d-1 roots outside, one inside")

    bvals = b_sequence(d, budgets.max_iter + 2).values
    target = Fraction(1, 2**64)
    while True:
        sq0 = _abs_bounds(rs.roots[0])
        sq1 = _abs_bounds(rs.roots[1]) if d > 2 else (Fraction(0),) * 2
        sqd = _abs_bounds(rs.roots[-1])
        undecided = sq0[0] <= sq1[1]  # dominance |a_1| > |a_2|
        if not undecided:
            for i in range(1, d):
                hi = _abs_bounds(rs.roots[i])[1]
                if hi > N * N:
                    lo = _abs_bounds(rs.roots[i])[0]
                    if lo > N * N:
                        raise HypothesisViolated(
                            "conjugate %d exceeds |norm| in modulus" % i)
                    undecided = True
                    break
        if not undecided:
            for kk, bk in enumerate(bvals, start=1):
                Npow = Fraction(N)**(2 * bk)
                if kk % 2 == 0:
                    if sqd[0] * Npow > 1:
                        return kk + 2
                    if sqd[1] * Npow > 1:
                        undecided = True
                        break
                else:
                    if sq0[1] < Npow:
                        return kk + 2
                    if sq0[0] < Npow:
                        undecided = True
                        break
            if not undecided:
                raise HypothesisUndecidable(
                    "no threshold crossed within %d terms" % len(bvals))
        try:
            rs = refine(rs, target, budgets.precision_ceiling)
        except BudgetExhausted:
            raise HypothesisUndecidable("comparison needs more precision "
                                        "than the ceiling allows")
        target /= 2**64


def check_root_localization(d: int, l: int, n: int,
                            budgets: Budgets = DEFAULT_BUDGETS) -> dict:
    """Certified interval checks on the roots of x(x^{d-2} - 2)(x - n) + l."""
    if d is None or d < 3 or l is None or abs(l) <= 1:
        raise ParameterOutOfRange("need d >= 3 and |l| >= 2")
    if n < abs(l) + 3:
        raise ParameterOutOfRange("need n >= |l| + 3 = %d, got %d"
                                  % (abs(l) + 3, n))
    x = IntPolynomial.exact([0, 1])
    mid = IntPolynomial.exact([-2] + [0] * (d - 3) + [1])
    f = x * mid * IntPolynomial.exact([-n, 1]) + IntPolynomial.exact([l])

    rs = classify_against_unit_circle(f, budgets.precision_ceiling)
    target = Fraction(1, 2**64)
    while True:
        report = {}
        undecided = False

        lo1, hi1 = _real_ball_bounds(rs.roots[0])
        in1 = (lo1 > n - Fraction(1, n)) and (hi1 < n + Fraction(1, n))
        out1 = (hi1 < n - Fraction(1, n)) or (lo1 > n + Fraction(1, n))
        report["alpha1_interval"] = in1 and rs.is_real[0]
        undecided |= not (in1 or out1)

        sqd_lo, sqd_hi = _abs_bounds(rs.roots[-1])
        lo_b, hi_b = Fraction(1, 4 * n * n), Fraction(l * l, n * n)
        ind = (sqd_lo > lo_b) and (sqd_hi < hi_b)
        outd = (sqd_hi < lo_b) or (sqd_lo > hi_b)
        report["alpha_d_interval"] = ind
        undecided |= not (ind or outd)

        band_hi = Fraction((3 * d - 1)**2, d * d)  # (3 - 1/d)^2
        mid_ok = True
        for i in range(1, d - 1):
            sq_lo, sq_hi = _abs_bounds(rs.roots[i])
            above_one = sq_lo > 1
            below_band = sq_hi**(d - 2) < band_hi
            decided = (above_one or sq_hi < 1) and \
                (below_band or sq_lo**(d - 2) > band_hi)
            undecided |= not decided
            mid_ok = mid_ok and above_one and below_band
        report["middle_band"] = mid_ok

        if rs.is_real[-1] and not rs.roots[-1].contains_zero() and \
                (hi1 < n or lo1 > n):
            alpha_d_negative = rs.roots[-1].re < 0
            report["sign_linkage"] = alpha_d_negative == (hi1 < n)
        else:
            undecided = True
            report["sign_linkage"] = False

        if not undecided:
            report["all"] = all(report.values())
            return report
        rs = refine(rs, target, budgets.precision_ceiling)
        target /= 2**64


# ---------------------------------------------------------------------------
# Salem catalog and the degree-4k large-orbit construction

_CATALOG_CACHE = None


def salem_catalog(budgets: Budgets = DEFAULT_BUDGETS):
    """Validated Salem polynomials, one per catalogued degree.

    Entries come from a versioned data file; each is re-checked by the
    classifier at first load so no unverified constants enter computation.
    """
    global _CATALOG_CACHE
    if _CATALOG_CACHE is not None:
        return list(_CATALOG_CACHE)
    raw = json.loads(importlib.resources.files("mahlerdyn")
                     .joinpath("data/salem_catalog.json").read_text())
    out = []
    for entry in raw["entries"]:
        f = IntPolynomial.of(entry["coeffs"])
        assert f.degree == entry["degree"], entry
        rs = classify_against_unit_circle(f, budgets.precision_ceiling)
        top = AlgebraicNumber(f, rs.roots[0], 0, rs)
        cls = classify(top, budgets)
        assert cls.tag is NumberTag.SALEM, (entry, cls)
        out.append((f.degree, f))
    _CATALOG_CACHE = out
    return list(out)


def _squarefree_part(m: int) -> int:
    out = 1
    for p, e in sympy.factorint(m).items():
        if e % 2 == 1:
            out *= p
    return out


def _quadratic_unit(p: int):
    """Smallest-trace unit > 1 of the real quadratic field of conductor p."""
    for t in range(1, 40 * p + 40):
        for e in (-1, 1):
            disc = t * t - 4 * e
            if disc > 0 and _squarefree_part(disc) == p:
                return IntPolynomial.exact([e, -t, 1]), t, e, disc
    raise ParameterOutOfRange("no small unit found in Q(sqrt %d)" % p)


def _exp2_at_least(q: Fraction) -> int:
    """Exponent e with 2**e >= q, off by at most one power of two."""
    return q.numerator.bit_length() - q.denominator.bit_length() + 1


def _log_enclosures(salem_rs, quad_disc: int, t: int, bits: int,
                    ceiling: int):
    """(lo, hi) Fraction enclosures of log a_1 and log b_1 at bits bits."""
    salem_rs = refine(salem_rs, Fraction(1, 2**bits), ceiling)
    ctx_up = gmpy2.context(precision=bits + 32, round=gmpy2.RoundUp)
    ctx_dn = gmpy2.context(precision=bits + 32, round=gmpy2.RoundDown)
    ab = salem_rs.roots[0]
    a_lo = _mpfr_to_fraction(ctx_dn.log(ab.abs_lower()))
    a_hi = _mpfr_to_fraction(ctx_up.log(ab.abs_upper()))
    s_lo = ctx_dn.sqrt(mpfr(quad_disc, bits + 32))
    s_hi = ctx_up.sqrt(mpfr(quad_disc, bits + 32))
    b_lo = _mpfr_to_fraction(ctx_dn.log(ctx_dn.div(ctx_dn.add(s_lo,
                                                              mpfr(t)), 2)))
    b_hi = _mpfr_to_fraction(ctx_up.log(ctx_up.div(ctx_up.add(s_hi,
                                                              mpfr(t)), 2)))
    return salem_rs, (a_lo, a_hi), (b_lo, b_hi)


def build_large_orbit_unit(k: int, S: int,
                           budgets: Budgets = DEFAULT_BUDGETS) -> LargeOrbitUnit:
    """Degree-4k unit whose finite orbit size S' + 2 exceeds S.

    The unit is a_1^ell * b_1 with a_1 a Salem number of degree 2k, b_1 a
    real quadratic unit > 1 in Q(sqrt p), and ell minimal such that
    2^S * ell * log a_1 > (2k-2)^S * log b_1.  The prime p is the smallest
    one coprime to the Salem discriminant for which the product field has
    full degree 4k.
    """
    if k < 3:
        raise ParameterOutOfRange("need k >= 3, got %d" % k)
    if S < 1:
        raise ParameterOutOfRange("need S >= 1, got %d" % S)
    entries = {d: f for d, f in salem_catalog(budgets)}
    if 2 * k not in entries:
        raise CatalogMissingDegree("no Salem entry of degree %d" % (2 * k))
    salem = entries[2 * k]
    disc_salem = discriminant(salem)
    m = 2 * k - 2

    p = 1
    while True:
        p = int(sympy.nextprime(p))
        if disc_salem % p == 0:
            continue
        try:
            return _build_for_prime(salem, p, k, S, m, budgets)
        except DegreeCollapse:
            continue


def _build_for_prime(salem, p, k, S, m, budgets: Budgets) -> LargeOrbitUnit:
    quad, t, e, disc_q = _quadratic_unit(p)
    salem_rs = classify_against_unit_circle(salem, budgets.precision_ceiling)

    bits = 96
    while True:
        salem_rs, (a_lo, a_hi), (b_lo, b_hi) = _log_enclosures(
            salem_rs, disc_q, t, bits, budgets.precision_ceiling)
        r_lo = (Fraction(m)**S * b_lo) / (Fraction(2)**S * a_hi)
        r_hi = (Fraction(m)**S * b_hi) / (Fraction(2)**S * a_lo)
        if r_lo > 0 and (r_lo.__floor__() == r_hi.__floor__()):
            ell = r_lo.__floor__() + 1
            break
        bits *= 2
        if bits > budgets.precision_ceiling:
            raise BudgetExhausted("could not pin down ell")

    s_prime = None
    s = 1
    while s_prime is None:
        cond_true = Fraction(2)**s * ell * a_hi < Fraction(m)**s * b_lo
        cond_false = Fraction(2)**s * ell * a_lo >= Fraction(m)**s * b_hi
        if cond_true:
            s_prime = s
        elif cond_false:
            s += 1
        else:
            bits *= 2
            if bits > budgets.precision_ceiling:
                raise BudgetExhausted("could not pin down S'")
            salem_rs, (a_lo, a_hi), (b_lo, b_hi) = _log_enclosures(
                salem_rs, disc_q, t, bits, budgets.precision_ceiling)

    product = product_composite(power_composite(salem, ell), quad)
    facs = [g for g, _ in factor(product) if g.degree >= 1]
    sets = [classify_against_unit_circle(g, budgets.precision_ceiling)
            for g in facs]

    vbits = 128
    while True:
        salem_rs = refine(salem_rs, Fraction(1, 2**vbits),
                          budgets.precision_ceiling, indices=[0])
        ab = salem_rs.roots[0]
        v = ab
        for _ in range(ell - 1):
            v = v * ab
        ctx = ab.ctx
        s_lo = _mpfr_to_fraction(ctx.down.sqrt(mpfr(disc_q, ctx.prec)))
        s_hi = _mpfr_to_fraction(ctx.up.sqrt(mpfr(disc_q, ctx.prec)))
        # beta lies in [(t + s_lo) / 2, (t + s_hi) / 2]
        center = Ball.from_fraction(ctx,
                                    Fraction(t, 2) + (s_lo + s_hi) / 4)
        halfwidth = (s_hi - s_lo) / 4
        extra = gmpy2.exp2(mpfr(_exp2_at_least(halfwidth))) \
            if halfwidth > 0 else mpfr(0)
        beta = Ball(ctx, center.re, center.im,
                    ctx.up.add(center.rad, extra))
        v = v * beta
        hits = []
        for fi in range(len(facs)):
            sets[fi] = refine(sets[fi], Fraction(1, 2**vbits),
                              budgets.precision_ceiling)
            for ri, b in enumerate(sets[fi].roots):
                if not b.is_disjoint(v):
                    hits.append((fi, ri))
        if len(hits) == 1:
            fi, ri = hits[0]
            break
        vbits *= 2
        if vbits > budgets.precision_ceiling:
            raise BudgetExhausted("could not isolate a_1^ell * b_1")

    g = facs[fi]
    if g.degree != 4 * k:
        raise DegreeCollapse("product field has degree %d < %d"
                             % (g.degree, 4 * k))
    number = AlgebraicNumber(g, sets[fi].roots[ri], ri, sets[fi])
    return LargeOrbitUnit(polynomial=g, orbit_size=s_prime + 2, ell=ell,
                          s_prime=s_prime, salem=salem, quadratic_unit=quad,
                          prime=p, number=number)
