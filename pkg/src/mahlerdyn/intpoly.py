"""Exact arithmetic on integer polynomials.

A polynomial is a tuple of arbitrary-precision integers in ascending degree
order; ``coeffs[i]`` is the coefficient of ``x^i``.  The canonical form used
throughout the package is primitive (content 1) with positive leading
coefficient.  Heavy algebra (factorization over Z, resultants) is delegated
to sympy's dense polynomial kernel; everything visible here is exact.
"""

from __future__ import annotations

import enum
import math
import re as _re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from .errors import (
    CriterionNotApplicable,
    HasZeroRoot,
    InvalidPolynomial,
    NotDivisible,
    NotSquarefree,
)

_X = sympy.Symbol("x")
_Y = sympy.Symbol("y")


class ReciprocalClass(enum.Enum):
    PLUS = "plus"      # x^d f(1/x) == f
    MINUS = "minus"    # x^d f(1/x) == -f
    NO = "no"


class EisensteinConclusion(enum.Enum):
    #: no factorization f = g*h with deg g >= 3 and deg h >= 3 exists
    NO_FACTOR_OF_DEGREE_AT_LEAST_3_IN_BOTH_PARTS = "no_deg3_split"


@dataclass(frozen=True)
class IntPolynomial:
    """Canonical primitive integer polynomial with positive leading coefficient."""

    coeffs: tuple[int, ...]

    # -- construction -------------------------------------------------------

    @staticmethod
    def of(seq) -> "IntPolynomial":
        """Canonicalize a raw coefficient sequence (ascending order)."""
        c = [int(v) for v in seq]
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise InvalidPolynomial("all coefficients are zero")
        g = 0
        for v in c:
            g = math.gcd(g, v)
        if c[-1] < 0:
            g = -g
        return IntPolynomial(tuple(v // g for v in c))

    @staticmethod
    def from_sympy(p) -> "IntPolynomial":
        return IntPolynomial.of(list(reversed(p.all_coeffs())))

    def to_sympy(self):
        return sympy.Poly(list(reversed(self.coeffs)), _X, domain="ZZ")

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0]

    def is_monic(self) -> bool:
        return self.lc == 1

    def __call__(self, x):
        """Evaluate exactly (int, Fraction, or anything with * and +)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        return format_poly(self)

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def exact(seq) -> "IntPolynomial":
        """Strip trailing zeros only; sign and content are preserved."""
        c = [int(v) for v in seq]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return IntPolynomial(tuple(c) if c else (0,))

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other: "IntPolynomial"):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial.exact([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "IntPolynomial"):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial.exact([x - y for x, y in zip(a, b)])

    def __mul__(self, other: "IntPolynomial"):
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial.exact(out)


def normalize(seq) -> IntPolynomial:
    """Public constructor: primitive, positive leading coefficient."""
    return IntPolynomial.of(seq)


def arith(f: IntPolynomial, g: IntPolynomial, kind: str) -> IntPolynomial:
    """add | sub | mul | divexact | rem, all exact (divexact up to content)."""
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    if kind == "divexact":
        q, r = _qr_rational(f, g)
        if any(r):
            raise NotDivisible("%s does not divide %s" % (g, f))
        return IntPolynomial.of(_clear_denominators(q))
    if kind == "rem":
        _, r = _qr_rational(f, g)
        if not any(r):
            return IntPolynomial((0,))
        return _signed_primitive(_clear_denominators(r))
    raise ValueError("unknown kind %r" % kind)


def _qr_rational(f: IntPolynomial, g: IntPolynomial):
    """Quotient/remainder over Q as Fraction lists (ascending)."""
    num = [Fraction(c) for c in f.coeffs]
    den = [Fraction(c) for c in g.coeffs]
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        c = num[-1] / den[-1]
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        num.pop()
    return q, num


def _clear_denominators(fracs):
    l = 1
    for v in fracs:
        l = l * v.denominator // math.gcd(l, v.denominator)
    return [int(v * l) for v in fracs]


def _signed_primitive(ints):
    """Primitive part, keeping the sign of the leading coefficient."""
    c = list(ints)
    while c and c[-1] == 0:
        c.pop()
    g = 0
    for v in c:
        g = math.gcd(g, v)
    return IntPolynomial(tuple(v // g for v in c))


def gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    return IntPolynomial.from_sympy(f.to_sympy().gcd(g.to_sympy()))


def derivative(f: IntPolynomial):
    d = [i * c for i, c in enumerate(f.coeffs)][1:]
    if not any(d):
        return None
    return _signed_primitive_raw(d)


def _signed_primitive_raw(ints):
    # like IntPolynomial.of but without sign normalization; derivative keeps
    # its natural sign and is primitive only up to the caller's needs
    c = list(ints)
    while c and c[-1] == 0:
        c.pop()
    return IntPolynomial(tuple(c))


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    df = derivative(f)
    if df is None:
        return IntPolynomial.of(f.coeffs)
    g = gcd(f, df)
    if g.degree == 0:
        return f
    return arith(f, g, "divexact")


def is_squarefree(f: IntPolynomial) -> bool:
    df = derivative(f)
    return df is None or gcd(f, df).degree == 0


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    return int(sympy.resultant(f.to_sympy().as_expr(), g.to_sympy().as_expr(), _X))


def discriminant(f: IntPolynomial) -> int:
    return int(f.to_sympy().discriminant())


def reverse(f: IntPolynomial) -> IntPolynomial:
    if f.constant == 0:
        raise HasZeroRoot("reverse undefined with zero constant term")
    return IntPolynomial.of(tuple(reversed(f.coeffs)))


def self_reciprocal_class(f: IntPolynomial) -> ReciprocalClass:
    if f.constant == 0:
        raise HasZeroRoot("reciprocal class undefined with zero constant term")
    rev = tuple(reversed(f.coeffs))
    if rev == f.coeffs:
        return ReciprocalClass.PLUS
    if rev == tuple(-c for c in f.coeffs):
        return ReciprocalClass.MINUS
    return ReciprocalClass.NO


def factor(f: IntPolynomial):
    """Complete factorization into canonical irreducible factors over Z.

    Returns a list of (IntPolynomial, multiplicity); the product of the
    factors reconstructs f up to content and sign.
    """
    if f.degree < 1:
        raise InvalidPolynomial("degree >= 1 required")
    _, fl = f.to_sympy().factor_list()
    out = [(IntPolynomial.from_sympy(p), int(m)) for p, m in fl if p.degree() > 0]
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def is_irreducible(f: IntPolynomial) -> bool:
    if f.degree < 1:
        return False
    fl = factor(f)
    return len(fl) == 1 and fl[0][1] == 1


def eisenstein_deg2_criterion(f: IntPolynomial, p: int) -> EisensteinConclusion:
    """Shifted Eisenstein test: p | a_i for i < d and p^2 does not divide a_2.

    When applicable, any factorization of f over Z has a factor of degree
    at most 2; combined with an exhaustive degree-<=2 factor exclusion this
    proves irreducibility.
    """
    if not f.is_monic():
        raise CriterionNotApplicable("monic input required")
    if f.degree < 3:
        raise CriterionNotApplicable("degree >= 3 required")
    if not sympy.isprime(p):
        raise CriterionNotApplicable("%d is not prime" % p)
    for c in f.coeffs[:-1]:
        if c % p != 0:
            raise CriterionNotApplicable("p does not divide every lower coefficient")
    a2 = f.coeffs[2] if f.degree >= 2 else 0
    if a2 % (p * p) == 0:
        raise CriterionNotApplicable("p^2 divides the x^2 coefficient")
    return EisensteinConclusion.NO_FACTOR_OF_DEGREE_AT_LEAST_3_IN_BOTH_PARTS


# -- power sums and composed operations -------------------------------------


def power_sums(f: IntPolynomial, upto: int):
    """Power sums p_1..p_upto of the roots of monic f, by Newton's recurrence."""
    assert f.is_monic()
    d = f.degree
    # e_i with sign: f = x^d + c_{d-1} x^{d-1} + ...; e_i = (-1)^i c_{d-i}
    e = [Fraction(0)] * (d + 1)
    e[0] = Fraction(1)
    for i in range(1, d + 1):
        e[i] = Fraction((-1) ** i * f.coeffs[d - i])
    p = [Fraction(0)] * (upto + 1)
    for n in range(1, upto + 1):
        if n <= d:
            acc = Fraction((-1) ** (n - 1) * n) * e[n]
        else:
            acc = Fraction(0)
        for i in range(1, min(n, d + 1)):
            if i <= d:
                acc += Fraction((-1) ** (i - 1)) * e[i] * p[n - i]
        p[n] = acc
    return [int(v) for v in p[1:]]


def _poly_from_power_sums(ps, degree: int):
    """Monic polynomial of given degree from power sums of its roots."""
    e = [Fraction(1)]
    for k in range(1, degree + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += Fraction((-1) ** (i - 1)) * e[k - i] * Fraction(ps[i - 1])
        e.append(acc / k)
    coeffs = [((-1) ** (degree - i)) * e[degree - i] for i in range(degree + 1)]
    for c in coeffs:
        if c.denominator != 1:
            raise InvalidPolynomial("non-integer symmetric function")
    return IntPolynomial.of([int(c) for c in coeffs])


def power_composite(f: IntPolynomial, ell: int) -> IntPolynomial:
    """Polynomial whose root multiset is {alpha_i^ell} (not nec. irreducible)."""
    if ell < 1:
        raise InvalidPolynomial("positive exponent required")
    if f.degree < 1:
        raise InvalidPolynomial("degree >= 1 required")
    if ell == 1:
        return IntPolynomial.of(f.coeffs)
    if f.is_monic():
        d = f.degree
        ps = power_sums(f, d * ell)
        return _poly_from_power_sums([ps[j * ell - 1] for j in range(1, d + 1)], d)
    res = sympy.resultant(
        f.to_sympy().as_expr().subs(_X, _Y), _X - _Y**ell, _Y
    )
    return IntPolynomial.from_sympy(sympy.Poly(res, _X))


def product_composite(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Polynomial whose root multiset is {alpha_i * beta_j}."""
    if f.degree < 1 or g.degree < 1:
        raise InvalidPolynomial("degree >= 1 required")
    m = g.degree
    fy = f.to_sympy().as_expr().subs(_X, _Y)
    gy = sum(c * _Y ** (m - j) * _X**j for j, c in enumerate(g.coeffs))
    res = sympy.resultant(fy, sympy.expand(gy), _Y)
    return IntPolynomial.from_sympy(sympy.Poly(sympy.expand(res), _X))


# -- exact unit-circle root counting ----------------------------------------


def _chebyshev_transform(coeffs):
    """For palindromic f of degree 2m return q with f(z) = z^m q(z + 1/z)."""
    n = len(coeffs) - 1
    assert n % 2 == 0
    m = n // 2
    # C_j(w) = z^j + z^-j: C_0 = 2, C_1 = w, C_j = w*C_{j-1} - C_{j-2}
    c_prev, c_cur = [2], [0, 1]
    q = [coeffs[m]]
    for j in range(1, m + 1):
        if j > 1:
            cj = [0] + c_cur
            for i, v in enumerate(c_prev):
                cj[i] -= v
            c_prev, c_cur = c_cur, cj
        while len(q) < len(c_cur):
            q.append(0)
        for i, v in enumerate(c_cur):
            q[i] += coeffs[m + j] * v
    return q


def sturm_count(coeffs, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of the squarefree poly in (a, b]."""
    p0 = [Fraction(c) for c in coeffs]
    while p0 and p0[-1] == 0:
        p0.pop()
    p1 = [i * c for i, c in enumerate(p0)][1:]
    seq = [p0, p1]
    while len(seq[-1]) > 1:
        _, r = _frac_rem(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append([-v for v in r])
    if len(seq[-1]) == 1 and seq[-1][0] == 0:
        seq.pop()

    def variations(x):
        signs = []
        for p in seq:
            v = Fraction(0)
            for c in reversed(p):
                v = v * x + c
            if v != 0:
                signs.append(1 if v > 0 else -1)
        return sum(1 for s1, s2 in zip(signs, signs[1:]) if s1 != s2)

    return variations(a) - variations(b)


def _frac_rem(num, den):
    num = [Fraction(v) for v in num]
    den = [Fraction(v) for v in den]
    q = []
    while len(num) >= len(den):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        c = num[-1] / den[-1]
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        num.pop()
    return None, num


def unit_circle_root_count(f: IntPolynomial) -> int:
    """Exact number of roots with |z| = 1, with no floating point anywhere.

    Factors of x, x-1, x+1 are stripped first; any remaining irreducible
    factor can only meet the unit circle if it is self-reciprocal of even
    degree, in which case the count comes from a Sturm sequence of the
    z + 1/z transform on [-2, 2].
    """
    if not is_squarefree(f):
        raise NotSquarefree(str(f))
    count = 0
    coeffs = list(f.coeffs)
    while coeffs[0] == 0:
        coeffs = coeffs[1:]  # root at 0 is off the circle
    g = IntPolynomial.of(coeffs)
    if g.degree == 0:
        return 0
    for h, _m in factor(g):
        if h.degree == 1:
            a, b = h.coeffs[0], h.coeffs[1]
            if abs(a) == abs(b):  # root ±1
                count += 1
            continue
        if self_reciprocal_class(h) is not ReciprocalClass.PLUS:
            continue
        if h.degree % 2 != 0:
            continue
        q = _chebyshev_transform(list(h.coeffs))
        count += 2 * sturm_count(q, Fraction(-2), Fraction(2))
    return count


# -- parsing / formatting ----------------------------------------------------

_TERM_RE = _re.compile(
    r"([+-]?)\s*(\d+)?\s*(?:\*\s*)?(x)?\s*(?:\^\s*(\d+))?\s*"
)


def parse_poly(text: str) -> IntPolynomial:
    """Parse either a human string over x or a comma-separated coefficient list."""
    text = text.strip()
    if not text:
        raise InvalidPolynomial("empty input")
    if "," in text or _re.fullmatch(r"[+-]?\d+", text):
        try:
            return IntPolynomial.of([int(t.strip()) for t in text.split(",")])
        except ValueError as e:
            raise InvalidPolynomial("bad coefficient list %r" % text) from e
    coeffs: dict[int, int] = {}
    pos = 0
    compact = text.replace(" ", "")
    n = len(compact)
    while pos < n:
        m = _TERM_RE.match(compact, pos)
        if not m or m.end() == pos:
            raise InvalidPolynomial("parse error at position %d in %r" % (pos, text))
        sign, digits, var, exp = m.groups()
        if digits is None and var is None:
            raise InvalidPolynomial("parse error at position %d in %r" % (pos, text))
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        if var is None:
            e = 0
            if exp is not None:
                raise InvalidPolynomial("exponent without variable in %r" % text)
        else:
            e = int(exp) if exp is not None else 1
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    top = max(coeffs)
    return IntPolynomial.of([coeffs.get(i, 0) for i in range(top + 1)])


def format_poly(f: IntPolynomial) -> str:
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if i == 0:
            body = str(mag)
        elif i == 1:
            body = "x" if mag == 1 else "%dx" % mag
        else:
            body = "x^%d" % i if mag == 1 else "%dx^%d" % (mag, i)
        parts.append(sign + body)
    return "".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def cyclotomic_check(f: IntPolynomial) -> bool:
    """True iff f divides x^N - 1 for some N (i.e. all roots are roots of unity)."""
    d = f.degree
    if not f.is_monic():
        return False
    fp = f.to_sympy()
    bound = max(8, 6 * d * d)
    for n in range(1, bound + 1):
        xn = sympy.Poly([1] + [0] * n, _X, domain="ZZ") - sympy.Poly([1], _X, domain="ZZ")
        if xn.rem(fp).is_zero:
            return True
    return False
