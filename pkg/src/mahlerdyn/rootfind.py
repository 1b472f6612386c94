"""Certified complex root isolation and exact unit-circle classification.

Roots are approximated by simultaneous Aberth-Ehrlich iteration at escalating
working precision, then certified a posteriori: around each approximation z
the disk of radius d*|f(z)/f'(z)| contains at least one root (the logarithmic
derivative is a sum of d terms 1/(z - alpha_i), one of which must be large),
so d pairwise disjoint disks contain exactly one root each.

On-circle labels are never decided numerically: the exact count comes from
the Sturm-based circle count, and precision escalates until exactly that many
balls straddle the circle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr

from .balls import Ball, BallContext
from .config import DEFAULT_BUDGETS
from .errors import BudgetExhausted, InvalidPolynomial, NotSquarefree
from .intpoly import IntPolynomial, is_squarefree, unit_circle_root_count


class CirclePosition(enum.Enum):
    INSIDE = "Inside"
    ON_CIRCLE = "OnCircle"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class CertifiedRootSet:
    """All roots of a squarefree polynomial, each in its own certified ball.

    Roots are ordered by descending modulus of the centers, ties broken by
    descending real part then descending imaginary part.  conj_pair[i] is the
    index of the complex conjugate of root i (i itself for real roots).
    """

    polynomial: IntPolynomial
    roots: tuple[Ball, ...]
    labels: tuple[CirclePosition, ...]
    is_real: tuple[bool, ...]
    conj_pair: tuple[int, ...]
    prec: int

    def count(self, label: CirclePosition) -> int:
        return sum(1 for x in self.labels if x is label)

    def to_json(self) -> list[dict]:
        out = []
        for ball, label, real in zip(self.roots, self.labels, self.is_real):
            rad = ball.rad_fraction()
            out.append({
                "re": _fraction_str(ball.midpoint_fraction()[0]),
                "im": _fraction_str(ball.midpoint_fraction()[1]),
                "radius_log2": _log2_ceil(rad),
                "label": label.value,
                "real": real,
            })
        return out


def _fraction_str(q: Fraction) -> str:
    return "%.17g" % float(q)


def _log2_ceil(q: Fraction):
    if q == 0:
        return None
    n = 0
    while q < 1:
        q *= 2
        n -= 1
    while q > 1:
        q /= 2
        n += 1
    return n


def _real_root_count(f: IntPolynomial) -> int:
    from sympy import Poly
    from sympy.abc import x

    return Poly(f.to_sympy(), x).count_roots()


def _cauchy_bound(f: IntPolynomial) -> float:
    lc = abs(f.lc)
    return 1.0 + max(abs(c) / lc for c in f.coeffs[:-1]) if f.degree >= 1 else 1.0


def _horner_mpc(coeffs, z):
    acc = mpc(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def _newton_polygon_slopes(f: IntPolynomial):
    """log2 root-modulus estimates from the upper hull of (i, log2|a_i|)."""
    pts = [(i, c.bit_length()) for i, c in enumerate(f.coeffs) if c != 0]
    hull = []
    for p in pts:
        while len(hull) >= 2 and \
                (hull[-1][1] - hull[-2][1]) * (p[0] - hull[-1][0]) <= \
                (p[1] - hull[-1][1]) * (hull[-1][0] - hull[-2][0]):
            hull.pop()
        hull.append(p)
    slopes = []
    # a vanishing constant term means roots at zero; seed those starts small
    valuation = next(i for i, c in enumerate(f.coeffs) if c != 0)
    slopes.extend([Fraction(-4)] * valuation)
    for (i, li), (j, lj) in zip(hull, hull[1:]):
        slopes.extend([Fraction(li - lj, j - i)] * (j - i))
    return slopes


def _aberth(f: IntPolynomial, prec: int, starts=None):
    """Approximate all roots simultaneously; returns a list of mpc centers."""
    d = f.degree
    dcoeffs = tuple(i * c for i, c in enumerate(f.coeffs))[1:]
    with gmpy2.context(precision=prec + 32):
        if starts is None:
            two_pi = 2 * gmpy2.const_pi()
            slopes = _newton_polygon_slopes(f)
            z = [gmpy2.exp2(mpfr(s) + Fraction(1, 4)) *
                 gmpy2.exp(mpc(0, two_pi * (k + Fraction(1, 3)) / d))
                 for k, s in enumerate(slopes)]
        else:
            # perturb duplicated starts so Aberth corrections stay finite
            z = [mpc(s) + mpc(0, mpfr(2) ** (-prec // 2) * (k + 1))
                 for k, s in enumerate(starts)]
        tol = mpfr(2) ** (-prec)
        for _ in range(80 + 4 * d):
            moved = mpfr(0)
            for i in range(d):
                fz = _horner_mpc(f.coeffs, z[i])
                dfz = _horner_mpc(dcoeffs, z[i])
                if dfz == 0:
                    z[i] += mpc(0, tol)
                    continue
                w = fz / dfz
                s = mpc(0)
                for j in range(d):
                    if j != i:
                        diff = z[i] - z[j]
                        if diff == 0:
                            diff = mpc(tol)
                        s += 1 / diff
                denom = 1 - w * s
                step = w if denom == 0 else w / denom
                z[i] -= step
                a = abs(step)
                if a > moved:
                    moved = a
            scale = max(mpfr(1), max(abs(v) for v in z))
            if moved < tol * scale:
                break
        return z


def _certify(f: IntPolynomial, centers, prec: int):
    """Build the d|f/f'| inclusion balls; None if not pairwise disjoint."""
    ctx = BallContext(prec)
    d = f.degree
    dcoeffs = tuple(i * c for i, c in enumerate(f.coeffs))[1:]
    balls = []
    for z in centers:
        pt = Ball(ctx, ctx.near.add(z.real, mpfr(0)),
                  ctx.near.add(z.imag, mpfr(0)), mpfr(0))
        num = _poly_ball(f.coeffs, pt).abs_upper()
        den = _poly_ball(dcoeffs, pt).abs_lower()
        if den == 0:
            return None
        rad = ctx.up.mul(mpfr(d), ctx.up.div(num, den))
        rad = ctx.up.add(rad, ctx.slack(rad, mpfr(1)))
        balls.append(Ball(ctx, pt.re, pt.im, rad))
    for i in range(d):
        for j in range(i + 1, d):
            if not balls[i].is_disjoint(balls[j]):
                return None
    return balls


def _poly_ball(coeffs, z: Ball) -> Ball:
    from .balls import poly_eval_ball

    return poly_eval_ball(coeffs, z)


def _conjugate_structure(balls, n_real: int):
    """Match balls into conjugate pairs; None if not yet resolvable.

    The conjugate of the root in ball i lies in mirror(ball i); if the mirror
    meets exactly one ball, that ball holds the conjugate root.  A fixed point
    of the resulting involution forces the root to equal its own conjugate.
    """
    d = len(balls)
    partner = [None] * d
    for i in range(d):
        mirror = balls[i].conjugate()
        hits = [j for j in range(d) if not mirror.is_disjoint(balls[j])]
        if len(hits) != 1:
            return None
        partner[i] = hits[0]
    for i in range(d):
        if partner[partner[i]] != i:
            return None
    if sum(1 for i in range(d) if partner[i] == i) != n_real:
        return None
    return partner


def _symmetrize(balls, partner):
    """Snap real roots onto the axis and make pairs exact mirror images."""
    out = list(balls)
    for i, j in enumerate(partner):
        b = out[i]
        ctx = b.ctx
        if j == i:
            rad = ctx.up.add(b.rad, ctx.up.add(ctx.mag(b.im), ctx.slack(b.im)))
            out[i] = Ball(ctx, b.re, mpfr(0), rad)
        elif j < i:
            out[i] = out[j].conjugate()
    return out


def _labels_for(balls, k_on: int):
    """Assign circle labels, or None if too few balls are separated yet."""
    labels = []
    straddle = 0
    for b in balls:
        lo, hi = b.abs_lower(), b.abs_upper()
        if hi < 1:
            labels.append(CirclePosition.INSIDE)
        elif lo > 1:
            labels.append(CirclePosition.OUTSIDE)
        else:
            labels.append(CirclePosition.ON_CIRCLE)
            straddle += 1
    if straddle != k_on:
        return None
    return tuple(labels)


def _sort_key(ball: Ball):
    re, im = ball.midpoint_fraction()
    return (re * re + im * im, re, im)


def isolate_roots(f: IntPolynomial, target_radius=None,
                  precision_ceiling: int = None,
                  start_prec: int = 64) -> CertifiedRootSet:
    """Disjoint certified balls around every root, circle-labeled.

    target_radius (a Fraction, float, or None) bounds every ball's radius in
    addition to the structural requirements.  Precision starts at 64 bits and
    doubles until certification succeeds or the ceiling is passed.
    """
    if f.degree < 1:
        raise InvalidPolynomial("degree must be at least 1: %r" % (f,))
    if not is_squarefree(f):
        raise NotSquarefree("roots of a non-squarefree polynomial collide: %r" % (f,))
    ceiling = precision_ceiling or DEFAULT_BUDGETS.precision_ceiling
    if target_radius is not None:
        target_radius = Fraction(target_radius)
    k_on = unit_circle_root_count(f)
    n_real = _real_root_count(f)

    prec = start_prec
    starts = None
    while prec <= ceiling:
        centers = _aberth(f, prec, starts)
        starts = centers
        balls = _certify(f, centers, prec)
        if balls is not None:
            partner = _conjugate_structure(balls, n_real)
            if partner is not None:
                balls = _symmetrize(balls, partner)
                labels = _labels_for(balls, k_on)
                small = (target_radius is None or
                         all(b.rad_at_most(target_radius) for b in balls))
                if labels is not None and small:
                    order = sorted(range(len(balls)),
                                   key=lambda i: _sort_key(balls[i]),
                                   reverse=True)
                    inv = {old: new for new, old in enumerate(order)}
                    return CertifiedRootSet(
                        polynomial=f,
                        roots=tuple(balls[i] for i in order),
                        labels=tuple(labels[i] for i in order),
                        is_real=tuple(partner[i] == i for i in order),
                        conj_pair=tuple(inv[partner[i]] for i in order),
                        prec=prec,
                    )
        prec *= 2
    raise BudgetExhausted(
        "root certification for %r did not converge below %d bits" % (f, ceiling))


def classify_against_unit_circle(f: IntPolynomial,
                                 precision_ceiling: int = None) -> CertifiedRootSet:
    """Label every root Inside/OnCircle/Outside with exact on-circle counts."""
    return isolate_roots(f, None, precision_ceiling)


def _newton_polish(root_set: CertifiedRootSet, target_radius: Fraction,
                   ceiling: int, indices=None):
    """Sharpen certified roots by per-root Newton at doubling precision.

    Roots are already pairwise separated, so the Aberth repulsion terms are
    unnecessary; each center converges on its own, conjugate pairs and real
    roots kept exact by construction.  With indices given, only that
    conjugation-closed subset is polished; the remaining balls stay as they
    are, which keeps disjointness intact since balls only shrink.  Returns
    None if certification or nesting fails, so the caller can fall back to
    full re-isolation.
    """
    f = root_set.polynomial
    d = f.degree
    dcoeffs = tuple(i * c for i, c in enumerate(f.coeffs))[1:]
    target_bits = max(8, target_radius.denominator.bit_length()
                      - target_radius.numerator.bit_length() + 1)
    selected = sorted(set(indices)) if indices is not None else list(range(d))
    if any(root_set.conj_pair[i] not in selected for i in selected):
        return None
    prec = max(root_set.prec, 64)
    with gmpy2.context(precision=prec + 32):
        centers = {i: mpc(root_set.roots[i].re, root_set.roots[i].im)
                   for i in selected}
    balls = dict()
    while True:
        prec *= 2
        if prec > ceiling:
            return None
        final = prec >= target_bits + 64
        with gmpy2.context(precision=prec + 32):
            for i in selected:
                j = root_set.conj_pair[i]
                if j < i:
                    centers[i] = gmpy2.mpc(centers[j].real, -centers[j].imag)
                    continue
                z = centers[i]
                steps = 2 if final or prec <= 16384 else 1
                for _ in range(steps):
                    dfz = _horner_mpc(dcoeffs, z)
                    if dfz == 0:
                        break
                    z = z - _horner_mpc(f.coeffs, z) / dfz
                centers[i] = z
        if not final:
            continue
        certified = _certify_some(f, dcoeffs, centers, prec)
        if certified is None:
            continue
        partner = {i: root_set.conj_pair[i] for i in selected}
        if not all(certified[i].conjugate().overlaps(certified[partner[i]])
                   or partner[i] == i for i in selected):
            return None
        sym = _symmetrize_some(certified, partner)
        if not all(root_set.roots[i].contains_ball(sym[i])
                   and sym[i].rad_at_most(target_radius) for i in selected):
            continue
        roots = list(root_set.roots)
        for i in selected:
            roots[i] = sym[i]
        return CertifiedRootSet(
            polynomial=f,
            roots=tuple(roots),
            labels=root_set.labels,
            is_real=root_set.is_real,
            conj_pair=root_set.conj_pair,
            prec=prec,
        )


def _certify_some(f, dcoeffs, centers: dict, prec: int):
    """Inclusion balls for a subset of centers (no pairwise check needed
    when the caller verifies nesting in previously disjoint balls)."""
    ctx = BallContext(prec)
    d = f.degree
    out = {}
    for i, z in centers.items():
        pt = Ball(ctx, ctx.near.add(z.real, mpfr(0)),
                  ctx.near.add(z.imag, mpfr(0)), mpfr(0))
        num = _poly_ball(f.coeffs, pt).abs_upper()
        den = _poly_ball(dcoeffs, pt).abs_lower()
        if den == 0:
            return None
        rad = ctx.up.mul(mpfr(d), ctx.up.div(num, den))
        rad = ctx.up.add(rad, ctx.slack(rad, mpfr(1)))
        out[i] = Ball(ctx, pt.re, pt.im, rad)
    return out


def _symmetrize_some(balls: dict, partner: dict) -> dict:
    out = dict(balls)
    for i in sorted(balls):
        b = out[i]
        ctx = b.ctx
        if partner[i] == i:
            rad = ctx.up.add(b.rad, ctx.up.add(ctx.mag(b.im), ctx.slack(b.im)))
            out[i] = Ball(ctx, b.re, mpfr(0), rad)
        elif partner[i] < i:
            out[i] = out[partner[i]].conjugate()
    return out


def refine(root_set: CertifiedRootSet, target_radius,
           precision_ceiling: int = None, indices=None) -> CertifiedRootSet:
    """Shrink every ball below target_radius; same roots, same labels.

    Each refined ball must nest inside the ball it came from, which pins the
    root correspondence, and the label partition must be unchanged.
    """
    target_radius = Fraction(target_radius)
    watch = range(len(root_set.roots)) if indices is None else indices
    if all(root_set.roots[i].rad_at_most(target_radius) for i in watch):
        return root_set
    ceiling = precision_ceiling or DEFAULT_BUDGETS.precision_ceiling
    polished = _newton_polish(root_set, target_radius, ceiling, indices)
    if polished is not None:
        return polished
    refined = isolate_roots(root_set.polynomial, target_radius,
                            precision_ceiling,
                            start_prec=max(64, root_set.prec))
    # equal-modulus roots may reorder between precisions; match by nesting
    d = len(root_set.roots)
    match = []
    for old in root_set.roots:
        hits = [j for j in range(d) if old.contains_ball(refined.roots[j])]
        if len(hits) != 1:
            raise BudgetExhausted(
                "refined root drifted outside its certified ball")
        match.append(hits[0])
    if sorted(match) != list(range(d)):
        raise BudgetExhausted("refined roots do not nest one per ball")
    if tuple(refined.labels[j] for j in match) != root_set.labels:
        raise BudgetExhausted("circle labels changed under refinement")
    back = {j: i for i, j in enumerate(match)}
    return CertifiedRootSet(
        polynomial=refined.polynomial,
        roots=tuple(refined.roots[j] for j in match),
        labels=root_set.labels,
        is_real=tuple(refined.is_real[j] for j in match),
        conj_pair=tuple(back[refined.conj_pair[j]] for j in match),
        prec=refined.prec,
    )
