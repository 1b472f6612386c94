"""Complex ball arithmetic with rigorous outward error bounds.

Centers are gmpy2 mpfr pairs at a working precision; the radius is an mpfr
computed with upward rounding.  Every operation returns an enclosure of all
possible exact results; rounding of the center is absorbed into the radius
by adding a few ulps per operation, which is generous but cheap.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpfr


class BallContext:
    """Working precision plus the two rounding contexts used throughout."""

    def __init__(self, prec: int):
        self.prec = prec
        self.near = gmpy2.context(precision=prec)
        self.up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
        self.down = gmpy2.context(precision=prec, round=gmpy2.RoundDown)

    def neg(self, x) -> mpfr:
        # builtin unary minus rounds through the 53-bit default context
        return self.near.minus(x)

    def mag(self, x) -> mpfr:
        return x if x >= 0 else self.near.minus(x)

    def slack(self, *xs) -> mpfr:
        """Upper bound covering a handful of nearest-mode roundings of xs."""
        m = mpfr(0)
        for x in xs:
            a = self.mag(x)
            if a > m:
                m = a
        if m == 0:
            return mpfr(0)
        return self.up.mul(m, mpfr(2) ** (4 - self.prec))


class Ball:
    """Closed disk {z : |z - (re + i*im)| <= rad} with rad an upper bound."""

    __slots__ = ("re", "im", "rad", "ctx")

    def __init__(self, ctx: BallContext, re, im, rad):
        self.ctx = ctx
        self.re = re
        self.im = im
        self.rad = rad

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_int(ctx: BallContext, n: int) -> "Ball":
        wide = gmpy2.mpfr(n, max(ctx.prec, n.bit_length() + 2))
        c = ctx.near.add(wide, mpfr(0))
        if c == wide:
            rad = mpfr(0)
        else:
            rad = ctx.up.add(ctx.mag(ctx.up.sub(c, wide)), ctx.slack(c))
        return Ball(ctx, c, mpfr(0), rad)

    @staticmethod
    def from_fraction(ctx: BallContext, q: Fraction) -> "Ball":
        num = gmpy2.mpfr(q.numerator, max(ctx.prec, q.numerator.bit_length() + 2))
        den = gmpy2.mpfr(q.denominator, max(ctx.prec, q.denominator.bit_length() + 2))
        c = ctx.near.div(num, den)
        rad = ctx.slack(c, mpfr(1))
        return Ball(ctx, c, mpfr(0), rad)

    @staticmethod
    def exact(ctx: BallContext, re, im=0) -> "Ball":
        return Ball(ctx, mpfr(re), mpfr(im), mpfr(0))

    # -- queries -------------------------------------------------------------

    def abs_upper(self) -> mpfr:
        ctx = self.ctx
        mod = ctx.up.sqrt(ctx.up.add(ctx.up.mul(self.re, self.re),
                                     ctx.up.mul(self.im, self.im)))
        return ctx.up.add(ctx.up.add(mod, self.rad), ctx.slack(mod))

    def abs_lower(self) -> mpfr:
        ctx = self.ctx
        mod = ctx.down.sqrt(ctx.down.add(ctx.down.mul(self.re, self.re),
                                         ctx.down.mul(self.im, self.im)))
        lo = ctx.down.sub(ctx.down.sub(mod, self.rad), ctx.slack(mod))
        return lo if lo > 0 else mpfr(0)

    def contains_zero(self) -> bool:
        return self.abs_lower() == 0

    def is_disjoint(self, other: "Ball") -> bool:
        ctx = self.ctx
        dx = ctx.down.sub(self.re, other.re)
        dy = ctx.down.sub(self.im, other.im)
        dist2 = ctx.down.sub(
            ctx.down.add(ctx.down.mul(dx, dx), ctx.down.mul(dy, dy)),
            ctx.slack(dx, dy),
        )
        rr = ctx.up.add(ctx.up.add(self.rad, other.rad), ctx.slack(self.rad, other.rad))
        return dist2 > ctx.up.mul(rr, rr)

    def contains_ball(self, other: "Ball") -> bool:
        """Certified: every point of `other` lies in `self`."""
        ctx = self.ctx
        dx = ctx.up.sub(self.re, other.re)
        dy = ctx.up.sub(self.im, other.im)
        dist = ctx.up.add(
            ctx.up.sqrt(ctx.up.add(ctx.up.mul(dx, dx), ctx.up.mul(dy, dy))),
            ctx.slack(dx, dy, mpfr(1)),
        )
        return ctx.up.add(dist, other.rad) <= self.rad

    def overlaps(self, other: "Ball") -> bool:
        return not self.is_disjoint(other)

    def midpoint_fraction(self) -> tuple[Fraction, Fraction]:
        return _mpfr_to_fraction(self.re), _mpfr_to_fraction(self.im)

    def rad_fraction(self) -> Fraction:
        return _mpfr_to_fraction(self.rad)

    def rad_at_most(self, target: Fraction) -> bool:
        """Cheap sufficient test for rad <= target (no big-int crossmul)."""
        if self.rad == 0:
            return True
        m, e = self.rad.as_mantissa_exp()
        upper = int(e) + int(m).bit_length()  # rad <= 2**upper
        n, d = target.numerator, target.denominator
        # 2**upper <= n/d whenever upper <= nbits - dbits - 1
        return upper <= n.bit_length() - d.bit_length() - 1

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Ball") -> "Ball":
        ctx = self.ctx
        re = ctx.near.add(self.re, other.re)
        im = ctx.near.add(self.im, other.im)
        rad = ctx.up.add(ctx.up.add(self.rad, other.rad), ctx.slack(re, im))
        return Ball(ctx, re, im, rad)

    def __sub__(self, other: "Ball") -> "Ball":
        ctx = self.ctx
        re = ctx.near.sub(self.re, other.re)
        im = ctx.near.sub(self.im, other.im)
        rad = ctx.up.add(ctx.up.add(self.rad, other.rad), ctx.slack(re, im))
        return Ball(ctx, re, im, rad)

    def __neg__(self) -> "Ball":
        ctx = self.ctx
        return Ball(ctx, ctx.neg(self.re), ctx.neg(self.im), self.rad)

    def conjugate(self) -> "Ball":
        ctx = self.ctx
        return Ball(ctx, self.re, ctx.neg(self.im), self.rad)

    def __mul__(self, other: "Ball") -> "Ball":
        ctx = self.ctx
        re = ctx.near.sub(ctx.near.mul(self.re, other.re),
                          ctx.near.mul(self.im, other.im))
        im = ctx.near.add(ctx.near.mul(self.re, other.im),
                          ctx.near.mul(self.im, other.re))
        m1 = self._abs_center_upper()
        m2 = other._abs_center_upper()
        rad = ctx.up.add(
            ctx.up.add(ctx.up.mul(m1, other.rad), ctx.up.mul(m2, self.rad)),
            ctx.up.mul(self.rad, other.rad),
        )
        rad = ctx.up.add(rad, ctx.slack(re, im, m1, m2))
        return Ball(ctx, re, im, rad)

    def _abs_center_upper(self) -> mpfr:
        ctx = self.ctx
        return ctx.up.add(
            ctx.up.sqrt(ctx.up.add(ctx.up.mul(self.re, self.re),
                                   ctx.up.mul(self.im, self.im))),
            ctx.slack(self.re, self.im),
        )

    def scale_int(self, n: int) -> "Ball":
        return self * Ball.from_int(self.ctx, n)

    def square_modulus(self) -> "Ball":
        """Real ball enclosing |z|^2 — exact realness for conjugate pairs."""
        ctx = self.ctx
        lo = ctx.down.mul(self.abs_lower(), self.abs_lower())
        hi = ctx.up.mul(self.abs_upper(), self.abs_upper())
        c = ctx.near.div(ctx.near.add(lo, hi), mpfr(2))
        rad = ctx.up.add(ctx.up.div(ctx.up.sub(hi, lo), mpfr(2)), ctx.slack(c))
        return Ball(ctx, c, mpfr(0), rad)

    def abs_ball(self) -> "Ball":
        """Real ball enclosing |z|."""
        ctx = self.ctx
        lo = self.abs_lower()
        hi = self.abs_upper()
        c = ctx.near.div(ctx.near.add(lo, hi), mpfr(2))
        rad = ctx.up.add(ctx.up.div(ctx.up.sub(hi, lo), mpfr(2)), ctx.slack(c))
        return Ball(ctx, c, mpfr(0), rad)

    def __repr__(self):
        return "Ball(%s + %s j, rad=%s)" % (
            gmpy2.mpfr(self.re, 53), gmpy2.mpfr(self.im, 53), gmpy2.mpfr(self.rad, 53)
        )


def _mpfr_to_fraction(x) -> Fraction:
    if x == 0:
        return Fraction(0)
    m, e = x.as_mantissa_exp()
    e = int(e)
    if e >= 0:
        return Fraction(int(m) << e)
    return Fraction(int(m), 1 << (-e))


def poly_eval_ball(coeffs, z: Ball) -> Ball:
    """Horner evaluation of an integer polynomial on a ball, rigorously."""
    ctx = z.ctx
    acc = Ball.from_int(ctx, coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * z + Ball.from_int(ctx, c)
    return acc


def contains_integer(b: Ball):
    """The unique integer enclosed by a real ball of radius < 1/2, or None."""
    ctx = b.ctx
    if not (b.rad < 0.5):
        return None
    lo_im = ctx.down.sub(b.im, b.rad)
    hi_im = ctx.up.add(b.im, b.rad)
    if not (lo_im <= 0 <= hi_im):
        return None
    center = _mpfr_to_fraction(b.re)
    n = round(center)
    if abs(center - n) + _mpfr_to_fraction(b.rad) < Fraction(1, 2):
        return n
    return None
