"""Exact algebraic numbers and identification of measure values.

An AlgebraicNumber is an irreducible integer polynomial plus a certified ball
isolating one specific root.  The identification problem solved here: given a
certified enclosure of a product of selected roots (times the leading
coefficient), find its minimal polynomial exactly.

Two routes, selected by the degree C(d, k) of the subset-product polynomial:
  * exact route: build the subset-product polynomial by ball escalation with
    every coefficient enclosure below radius 1/2, factor it, select the factor
    whose root ball contains the value;
  * relation route (large C(d, k)): recover a candidate minimal polynomial by
    integer-relation detection (PSLQ) on powers of the value, then certify
    g(v) = 0 unconditionally: v is a root of the monic subset-product
    polynomial P of degree D, so either g(v) = 0 or |g(v)| is at least the
    inverse of a computable resultant bound; evaluating g on a sufficiently
    refined enclosure of v decides which.
A value whose inverse also appears among the conjugate products usually has a
self-reciprocal minimal polynomial; powers of v + 1/v then halve both the
relation dimension and the working precision.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import mpmath
from gmpy2 import mpfr

from .balls import Ball, BallContext, contains_integer, poly_eval_ball
from .config import Budgets, DEFAULT_BUDGETS
from .errors import (BudgetExhausted, CombinatorialBudgetExceeded,
                     DegreeCapExceeded, InvalidPolynomial, ReducibleInput)
from .intpoly import (IntPolynomial, arith, factor, is_irreducible)
from .rootfind import CertifiedRootSet, classify_against_unit_circle, refine


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root of an irreducible integer polynomial, pinned by an isolating ball."""

    minpoly: IntPolynomial
    root_box: Ball
    root_index: int
    root_set: CertifiedRootSet

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def is_real(self) -> bool:
        return self.root_set.is_real[self.root_index]

    def to_json(self) -> dict:
        return {
            "minpoly": list(self.minpoly.coeffs),
            "degree": self.degree,
            "root": self.root_set.to_json()[self.root_index],
        }

    def __repr__(self):
        re, im = self.root_box.midpoint_fraction()
        return "AlgebraicNumber(%s, root %d ~ %.6g%+.6gj)" % (
            self.minpoly, self.root_index, float(re), float(im))


def make(f: IntPolynomial, selector: int = 0,
         precision_ceiling: int = None) -> AlgebraicNumber:
    """The selector-th root of irreducible f under the canonical ordering."""
    if f.degree < 1:
        raise InvalidPolynomial("no roots: %r" % (f,))
    factors = factor(f)
    if len(factors) != 1 or factors[0][1] != 1:
        raise ReducibleInput(factors)
    f = factors[0][0]
    if not (0 <= selector < f.degree):
        raise InvalidPolynomial("selector %d out of range for degree %d"
                                % (selector, f.degree))
    rs = classify_against_unit_circle(f, precision_ceiling)
    return AlgebraicNumber(f, rs.roots[selector], selector, rs)


def approx(a: AlgebraicNumber, radius) -> Ball:
    """A ball around a with radius at most the requested one."""
    rs = refine(a.root_set, Fraction(radius))
    return rs.roots[a.root_index]


def is_rational_integer(a: AlgebraicNumber):
    if a.degree == 1 and a.minpoly.lc == 1:
        return -a.minpoly.constant
    return None


def algebraic_equals(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """Decidable equality: same minimal polynomial and same isolated root."""
    if a.minpoly != b.minpoly:
        return False
    if a.root_index == b.root_index:
        return True
    # distinct isolated roots of one squarefree polynomial are distinct
    return not a.root_set.roots[a.root_index].is_disjoint(
        b.root_set.roots[b.root_index]) and _same_root(a, b)


def _same_root(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    # refine both sets until the root balls either separate or both nest in
    # a single ball of the other set; the latter cannot happen for distinct
    # roots once radii drop below half the minimal root distance
    target = Fraction(1, 2**64)
    ceiling = DEFAULT_BUDGETS.precision_ceiling
    while True:
        ra = refine(a.root_set, target, ceiling)
        rb = refine(b.root_set, target, ceiling)
        ba, bb = ra.roots[a.root_index], rb.roots[b.root_index]
        if ba.is_disjoint(bb):
            return False
        if ba.contains_ball(bb) or bb.contains_ball(ba):
            return True
        target /= 2**64


# ---------------------------------------------------------------------------
# exact subset-product route


def subset_product_polynomial(f: IntPolynomial, k: int,
                              budgets: Budgets = DEFAULT_BUDGETS,
                              root_set: CertifiedRootSet = None) -> IntPolynomial:
    """Monic integer polynomial whose roots are lc(f) times all k-fold
    products of roots of f; exact by ball escalation and rounding."""
    d = f.degree
    if not 1 <= k <= d:
        raise InvalidPolynomial("k=%d outside 1..%d" % (k, d))
    count = math.comb(d, k)
    if count > budgets.subset_cap:
        raise CombinatorialBudgetExceeded(
            "C(%d,%d) = %d exceeds cap %d" % (d, k, count, budgets.subset_cap))
    rs = root_set or classify_against_unit_circle(f, budgets.precision_ceiling)
    prec = 64
    while prec <= budgets.precision_ceiling:
        rs = refine(rs, Fraction(1, 2**prec), budgets.precision_ceiling)
        coeffs = _subset_poly_coeffs(rs, k, prec)
        if coeffs is not None:
            return IntPolynomial(tuple(coeffs))
        prec *= 2
    raise BudgetExhausted("subset-product coefficients did not stabilize "
                          "below %d bits" % budgets.precision_ceiling)


def _subset_poly_coeffs(rs: CertifiedRootSet, k: int, prec: int):
    ctx = BallContext(prec)
    an = Ball.from_int(ctx, rs.polynomial.lc)
    roots = [Ball(ctx, ctx.near.add(b.re, mpfr(0)), ctx.near.add(b.im, mpfr(0)),
                  ctx.up.add(b.rad, ctx.slack(b.re, b.im))) for b in rs.roots]
    # expand prod over k-subsets of (x - an*prod(subset)) incrementally
    poly = [Ball.from_int(ctx, 1)]
    for combo in itertools.combinations(roots, k):
        val = an
        for r in combo:
            val = val * r
        nxt = [Ball.from_int(ctx, 0) for _ in range(len(poly) + 1)]
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * val
        poly = nxt
    out = []
    for c in poly:
        n = contains_integer(c)
        if n is None:
            return None
        out.append(n)
    return out


def identify_minpoly(value: Ball, P: IntPolynomial,
                     degree_cap: int = None,
                     budgets: Budgets = DEFAULT_BUDGETS) -> IntPolynomial:
    """The irreducible factor of P vanishing at the value isolated by the ball.

    Tries integer-relation recovery first (verified by exact division and
    irreducibility), then falls back to factoring P outright and eliminating
    factors whose roots stay away from the ball.
    """
    degree_cap = degree_cap or budgets.degree_cap
    if P.degree > 0 and min(P.degree, degree_cap) >= 1:
        cand = _relation_candidate_from_ball(value, min(P.degree, degree_cap))
        if cand is not None and cand.degree <= degree_cap:
            if arith(P, cand, "rem").coeffs == (0,) and is_irreducible(cand):
                if _ball_holds_root(cand, value, budgets):
                    return cand
    best = None
    for g, _ in factor(P):
        if g.degree > 0 and _ball_holds_root(g, value, budgets):
            if best is not None:
                raise BudgetExhausted(
                    "value ball overlaps roots of two factors; refine input")
            best = g
    if best is None:
        raise InvalidPolynomial("ball contains no root of %r" % (P,))
    if best.degree > degree_cap:
        raise DegreeCapExceeded("identified degree %d exceeds cap %d"
                                % (best.degree, degree_cap))
    return best


def _ball_holds_root(g: IntPolynomial, value: Ball,
                     budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    rs = classify_against_unit_circle(g, budgets.precision_ceiling)
    hits = [b for b in rs.roots if not b.is_disjoint(value)]
    return len(hits) >= 1


def _relation_candidate_from_ball(value: Ball, max_degree: int):
    prec = max(2 * value.ctx.prec, 256)
    v = _ball_to_mpf(value, prec)
    if v is None:
        return None
    return _pslq_candidate(v, max_degree, prec // max(1, max_degree + 2))


# ---------------------------------------------------------------------------
# integer-relation machinery


def _ball_to_mpf(b: Ball, prec: int):
    if not (b.im == 0):
        return None
    m, e = b.re.as_mantissa_exp()
    with mpmath.workprec(prec):
        return +mpmath.mpf((int(m), int(e)))


def _pslq_candidate(v, degree: int, coeff_bits: int):
    """Monic-insensitive integer relation among 1, v, ..., v^degree."""
    prec = mpmath.mp.prec
    with mpmath.workprec(prec):
        vec = [mpmath.mpf(1)]
        for _ in range(degree):
            vec.append(vec[-1] * v)
        try:
            rel = mpmath.pslq(vec, maxcoeff=2**max(coeff_bits, 16),
                              maxsteps=4_000_000)
        except ValueError:
            return None
    if not rel:
        return None
    while rel and rel[-1] == 0:
        rel = rel[:-1]
    if len(rel) < 2:
        return None
    if rel[-1] < 0:
        rel = [-c for c in rel]
    return IntPolynomial.of(rel)


# ---------------------------------------------------------------------------
# measure-value identification


def reciprocal_expand(h: IntPolynomial) -> IntPolynomial:
    """x^m * h(x + 1/x) for m = deg h; inverse of the z+1/z coefficient map."""
    m = h.degree
    x = IntPolynomial((0, 1))
    x2p1 = IntPolynomial((1, 0, 1))
    acc = IntPolynomial((0,))
    for j, c in enumerate(h.coeffs):
        if c == 0:
            continue
        term = IntPolynomial((c,))
        for _ in range(j):
            term = term * x2p1
        for _ in range(m - j):
            term = term * x
        acc = acc + term
    return acc


def _up_log2(ctx: BallContext, x) -> Fraction:
    from .balls import _mpfr_to_fraction
    return _mpfr_to_fraction(ctx.up.log2(x))


def _product_ball(rs: CertifiedRootSet, indices, prec: int) -> Ball:
    """Rigorous real ball for |lc| * prod of the selected root moduli.

    The selection is conjugation-closed, so conjugate pairs contribute their
    exact |z|^2 and the product is genuinely real.
    """
    ctx = BallContext(prec)
    val = Ball.from_int(ctx, abs(rs.polynomial.lc))
    chosen = set(indices)
    for i in indices:
        j = rs.conj_pair[i]
        if j not in chosen:
            raise InvalidPolynomial("selection not closed under conjugation")
        b = rs.roots[i]
        lifted = Ball(ctx, ctx.near.add(b.re, mpfr(0)),
                      ctx.near.add(b.im, mpfr(0)),
                      ctx.up.add(b.rad, ctx.slack(b.re, b.im)))
        if j == i:
            val = val * lifted.abs_ball()
        elif j > i:
            val = val * lifted.square_modulus()
    return val


def _signed_product_sign(rs: CertifiedRootSet, indices, ceiling: int) -> int:
    """Sign of lc * prod of the selected roots (a nonzero real number)."""
    bits = 64
    while True:
        ctx = BallContext(bits + 64)
        w = Ball.from_int(ctx, rs.polynomial.lc)
        for i in indices:
            b = rs.roots[i]
            w = w * Ball(ctx, ctx.near.add(b.re, mpfr(0)),
                         ctx.near.add(b.im, mpfr(0)),
                         ctx.up.add(b.rad, ctx.slack(b.re, b.im)))
        # conjugation-closed selection, so w is real: fold the imaginary slack
        real = Ball(ctx, w.re, mpfr(0),
                    ctx.up.add(w.rad, ctx.up.add(ctx.mag(w.im),
                                                 ctx.slack(w.im))))
        if not real.contains_zero():
            return 1 if w.re > 0 else -1
        bits *= 2
        if bits > ceiling:
            raise BudgetExhausted("sign of the root product did not resolve")
        rs = refine(rs, Fraction(1, 2**bits), ceiling)


def _refined_product(rs: CertifiedRootSet, indices, bits: int,
                     ceiling: int):
    rs = refine(rs, Fraction(1, 2**bits), ceiling, indices=indices)
    return rs, _product_ball(rs, indices, bits + 64)


def _log_refine(rs: CertifiedRootSet, ceiling: int) -> CertifiedRootSet:
    """Refine until ball radii are well below every root's modulus."""
    from .rootfind import _newton_polygon_slopes
    smallest = min(_newton_polygon_slopes(rs.polynomial))
    bits = 192 + max(0, math.ceil(-float(smallest)))
    return refine(rs, Fraction(1, 2**bits), ceiling)


def _subset_log_sums(rs: CertifiedRootSet, k: int):
    """Upper log2 bounds of |lc * prod(T)| over all k-subsets T (Fractions)."""
    ctx = BallContext(96)
    logs = []
    for b in rs.roots:
        hi = Ball(ctx, ctx.near.add(b.re, mpfr(0)), ctx.near.add(b.im, mpfr(0)),
                  ctx.up.add(b.rad, ctx.slack(b.re, b.im))).abs_upper()
        logs.append(_up_log2(ctx, hi))
    base = _up_log2(ctx, mpfr(abs(rs.polynomial.lc)))
    return [base + sum(c) for c in itertools.combinations(logs, k)]


def _inv_real_ball(b: Ball) -> Ball:
    """Reciprocal of a real ball certified away from zero."""
    ctx = b.ctx
    lo, hi = b.abs_lower(), b.abs_upper()
    if not (lo > 0):
        raise InvalidPolynomial("cannot invert a ball touching zero")
    inv_lo = ctx.down.div(mpfr(1), hi)
    inv_hi = ctx.up.div(mpfr(1), lo)
    half = ctx.up.mul(ctx.up.sub(inv_hi, inv_lo), mpfr("0.5"))
    mid = ctx.near.add(inv_lo, half)
    rad = ctx.up.add(half, ctx.slack(mid, half))
    if b.re < 0:
        mid = ctx.neg(mid)
    return Ball(ctx, mid, mpfr(0), rad)


def _verify_vanishes(poly: IntPolynomial, rs: CertifiedRootSet, indices,
                     D: int, budgets: Budgets, reciprocal: bool) -> bool:
    """Certify that the candidate annihilates the root product exactly.

    The value v (or w = v + 1/v on the reciprocal route) is a root of a monic
    integer polynomial of degree D whose roots run over all subset products
    (resp. their reciprocal-symmetrized sums).  A nonzero value of the
    candidate at v would make a nonzero integer resultant, so its absolute
    value is bounded below by the inverse of a product over the remaining
    subset values; beating that bound on a certified enclosure proves an
    exact zero.  The reciprocal route needs the input to be an algebraic
    unit, which the caller guarantees.
    """
    m = poly.degree
    hbits = max(abs(c) for c in poly.coeffs).bit_length()
    rs = _log_refine(rs, budgets.precision_ceiling)
    sums = _subset_log_sums(rs, len(indices))
    s_plus = sum(x for x in sums if x > 0)
    per_root = math.ceil(math.log2(m + 1) + 1) + hbits
    if reciprocal:
        height_term = m * (math.ceil(s_plus) + D)
    else:
        height_term = math.ceil(m * s_plus)
    l_other = (D - 1) * per_root + height_term + 4
    log_v = float(max(max(sums), 1))
    guard = math.ceil((m + 1) * log_v) + hbits + 128
    bits = l_other + guard
    if bits > budgets.precision_ceiling:
        raise BudgetExhausted(
            "certifying the identified value needs %d bits, ceiling %d"
            % (bits, budgets.precision_ceiling))
    rs2, vball = _refined_product(rs, indices, bits, budgets.precision_ceiling)
    z = vball + _inv_real_ball(vball) if reciprocal else vball
    pv = poly_eval_ball(poly.coeffs, z)
    ctx = vball.ctx
    threshold = ctx.down.exp2(mpfr(-l_other))
    if pv.abs_upper() < threshold:
        return True
    if pv.abs_lower() > 0:
        return False
    raise BudgetExhausted("zero test for identified value is inconclusive")


def _pslq_from_ball(vball: Ball, degree: int, coeff_bits: int, prec: int):
    v = _ball_to_mpf(vball, prec)
    if v is None:
        return None
    with mpmath.workprec(prec):
        return _pslq_candidate(v, degree, coeff_bits)


def _match_root_index(g_rs: CertifiedRootSet, rs, indices, bits,
                      ceiling: int):
    """Index of the root of g equal to the (certified-zero) value."""
    while True:
        rs, vball = _refined_product(rs, indices, bits, ceiling)
        hits = [i for i, b in enumerate(g_rs.roots) if not b.is_disjoint(vball)]
        if len(hits) == 1:
            return g_rs, hits[0]
        if not hits:
            g_rs = refine(g_rs, Fraction(1, 2**bits), ceiling)
            hits = [i for i, b in enumerate(g_rs.roots)
                    if not b.is_disjoint(vball)]
            if len(hits) == 1:
                return g_rs, hits[0]
        bits *= 2
        if bits > ceiling:
            raise BudgetExhausted("could not separate the identified root")
        g_rs = refine(g_rs, Fraction(1, 2**bits), ceiling)


def _integer_algnum(n: int) -> AlgebraicNumber:
    g = IntPolynomial((-n, 1))
    rs = classify_against_unit_circle(g)
    return AlgebraicNumber(g, rs.roots[0], 0, rs)


def identify_measure_value(a: AlgebraicNumber, out_indices,
                           budgets: Budgets = DEFAULT_BUDGETS,
                           coeff_bits_hint: int = None) -> AlgebraicNumber:
    """Exact minimal polynomial of |lc| * prod of the selected conjugates."""
    f = a.minpoly
    rs = a.root_set
    d = f.degree
    k = len(out_indices)
    if k == 0:
        return _integer_algnum(abs(f.lc))
    if k == d:
        return _integer_algnum(abs(f.constant))
    D = math.comb(d, k)
    if D > budgets.subset_cap:
        raise CombinatorialBudgetExceeded(
            "C(%d,%d) = %d exceeds cap %d" % (d, k, D, budgets.subset_cap))
    if D <= budgets.exact_subset_threshold:
        return _identify_exact(a, out_indices, D, budgets)
    return _identify_relation(a, out_indices, D, budgets, coeff_bits_hint)


def _negate_variable(P: IntPolynomial) -> IntPolynomial:
    """Monic polynomial whose roots are the negated roots of monic P."""
    sign = 1 if P.degree % 2 == 0 else -1
    return IntPolynomial.exact([sign * (c if i % 2 == 0 else -c)
                                for i, c in enumerate(P.coeffs)])


def _identify_exact(a: AlgebraicNumber, out_indices, D, budgets: Budgets):
    P = subset_product_polynomial(a.minpoly, len(out_indices), budgets,
                                  a.root_set)
    if _signed_product_sign(a.root_set, out_indices,
                            budgets.precision_ceiling) < 0:
        P = _negate_variable(P)
    rs = a.root_set
    bits = 128
    factors = None
    _, vball = _refined_product(rs, out_indices, bits,
                                budgets.precision_ceiling)
    cand = _relation_candidate_from_ball(vball, min(P.degree,
                                                   budgets.degree_cap))
    if cand is not None and cand.lc == 1 and \
            arith(P, cand, "rem").coeffs == (0,) and is_irreducible(cand):
        rest = arith(P, cand, "divexact")
        factors = [cand]
        if rest.degree >= 1:
            factors += [g for g, _ in factor(rest)]
    if factors is None:
        factors = [g for g, _ in factor(P) if g.degree > 0]
    if len(factors) == 1:
        g = factors[0]
    else:
        g = _eliminate_factors(factors, rs, out_indices, budgets)
    if g.degree > budgets.degree_cap:
        raise DegreeCapExceeded("identified degree %d exceeds cap %d"
                                % (g.degree, budgets.degree_cap))
    g_rs = classify_against_unit_circle(g, budgets.precision_ceiling)
    g_rs, idx = _match_root_index(g_rs, rs, out_indices, 128,
                                  budgets.precision_ceiling)
    return AlgebraicNumber(g, g_rs.roots[idx], idx, g_rs)


def _eliminate_factors(factors, rs, indices, budgets: Budgets):
    """Refine until the value ball meets roots of exactly one factor."""
    bits = 128
    sets = [classify_against_unit_circle(g, budgets.precision_ceiling)
            for g in factors]
    while bits <= budgets.precision_ceiling:
        rs, vball = _refined_product(rs, indices, bits,
                                     budgets.precision_ceiling)
        alive = []
        for g, g_rs in zip(factors, sets):
            g_rs = refine(g_rs, Fraction(1, 2**bits),
                          budgets.precision_ceiling)
            if any(not b.is_disjoint(vball) for b in g_rs.roots):
                alive.append(g)
        if len(alive) == 1:
            return alive[0]
        bits *= 2
    raise BudgetExhausted("factor selection did not separate")


def _attempt_plan(degree_in: int, D: int, log_v: float, fsums,
                  recip_hint: bool, hint_bits, degree_cap: int):
    """Candidate (degree, route, coeff-bits) attempts, cheapest first.

    Coefficient sizes are predicted from the value's log: a degree-m minimal
    polynomial of a reciprocal unit has about (m/2) * log2(v) coefficient
    bits, a general one about m * log2(v).  A hinted attempt (from the
    caller's knowledge of the previous orbit step) runs right after the cheap
    probes so that the common case needs no sweep at all.
    """
    lv = max(log_v, 1.0)
    plan = []
    for m in range(1, min(D, degree_cap) + 1):
        cap = int(sum(x for x in fsums[:m] if x > 0)) + m + 16
        routes = [(False, m + 2, m)]
        if recip_hint and m % 2 == 0:
            routes.append((True, m // 2 + 2, m // 2))
        for recip, dim, scale in routes:
            eb = min(cap, int(scale * lv) + 64)
            while True:
                prec = dim * (eb + 24) + 512
                plan.append((dim * dim * prec, m, recip, eb))
                if eb >= cap:
                    break
                eb = min(2 * eb, cap)
    plan.sort()
    if hint_bits:
        recip = recip_hint and degree_in % 2 == 0
        dim = degree_in // 2 + 2 if recip else degree_in + 2
        hinted = (0, degree_in, recip, max(hint_bits, 160))
        cheap = [p for p in plan if p[0] <= 9 * (3 * 2048 + 512)]
        rest = [p for p in plan if p[0] > cheap[-1][0]] if cheap else plan
        plan = cheap + [hinted] + rest
    return [(m, recip, eb) for _, m, recip, eb in plan]


def _identify_relation(a: AlgebraicNumber, out_indices, D,
                       budgets: Budgets, coeff_bits_hint):
    ceiling = budgets.precision_ceiling
    rs = _log_refine(a.root_set, ceiling)
    sums = _subset_log_sums(rs, len(out_indices))
    fsums = sorted((float(x) for x in sums), reverse=True)
    log_v = fsums[0]
    unit = abs(a.minpoly.lc) == 1 and abs(a.minpoly.constant) == 1
    recip_hint = unit and any(abs(x + log_v) < 0.01 for x in fsums)
    tried = set()
    starved = False
    for m, recip, eb in _attempt_plan(a.degree, D, log_v, fsums, recip_hint,
                                      coeff_bits_hint, budgets.degree_cap):
        key = (m, recip, eb // max(1, eb // 8))
        dim = m // 2 + 2 if recip else m + 2
        prec = dim * (eb + 24) + 512
        if (m, recip, eb) in tried:
            continue
        tried.add((m, recip, eb))
        if prec > ceiling:
            starved = True
            continue
        found = _attempt(rs, out_indices, m, recip, eb, ceiling)
        if found is None:
            continue
        g, h = found
        try:
            if h is not None:
                ok = _verify_vanishes(h, rs, out_indices, D, budgets,
                                      reciprocal=True)
            else:
                ok = _verify_vanishes(g, rs, out_indices, D, budgets,
                                      reciprocal=False)
        except BudgetExhausted:
            starved = True
            continue
        if not ok:
            continue
        g_rs = classify_against_unit_circle(g, ceiling)
        g_rs, idx = _match_root_index(g_rs, rs, out_indices, 128, ceiling)
        return AlgebraicNumber(g, g_rs.roots[idx], idx, g_rs)
    if starved:
        raise BudgetExhausted(
            "identification needs more than %d bits of precision" % ceiling)
    raise BudgetExhausted("no minimal polynomial found within degree cap %d"
                          % budgets.degree_cap)


def _attempt(rs, out_indices, m, reciprocal, eb, ceiling):
    """One candidate-recovery attempt at a fixed degree and coefficient size."""
    if reciprocal:
        dim = m // 2 + 2
        prec = dim * (eb + 24) + 512
        rs2, vball = _refined_product(rs, out_indices, prec, ceiling)
        v = _ball_to_mpf(vball, prec)
        if v is None:
            return None
        with mpmath.workprec(prec):
            w = v + 1 / v
            h = _pslq_candidate(w, m // 2, eb)
        if h is None or h.degree != m // 2 or abs(h.lc) != 1:
            return None
        if h.lc != 1:
            h = -h
        g = reciprocal_expand(h)
        if g.degree == m and g.lc == 1 and is_irreducible(g):
            return g, h
        return None
    dim = m + 2
    prec = dim * (eb + 24) + 512
    rs2, vball = _refined_product(rs, out_indices, prec, ceiling)
    g = _pslq_from_ball(vball, m, eb, prec)
    if g is not None and g.degree == m and g.lc == 1 and is_irreducible(g):
        return g, None
    return None
