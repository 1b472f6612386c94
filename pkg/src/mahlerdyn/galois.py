"""One-sided alternating-group certificates from mod-p cycle types.

Factoring an irreducible integer polynomial modulo an unramified prime reads
off the cycle type of a Frobenius element of the Galois group.  Two classical
criteria turn observed cycle types into a sound lower bound on the group:

  * a p-cycle for a prime p with d/2 < p < d - 2 inside a transitive group
    forces A_d (the p > d/2 condition gives primitivity for free);
  * a primitive group (witnessed by a d-cycle for prime d, or a (d-1)-cycle)
    containing a transposition is all of S_d.

Both are one-sided: an inconclusive prime budget yields Unknown, never a
false positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .config import DEFAULT_BUDGETS
from .errors import DegreeTooSmall, ReducibleInput
from .intpoly import IntPolynomial, discriminant, factor, is_irreducible


@dataclass(frozen=True)
class CycleTypeEvidence:
    """Factorization degree pattern of f modulo one good prime."""

    prime: int
    factorization_degrees: tuple[int, ...]


@dataclass(frozen=True)
class AlternatingCertificate:
    """Sound witness that the Galois group contains A_d (or Unknown)."""

    certified: bool
    rule: str | None
    witnesses: tuple[CycleTypeEvidence, ...]
    discriminant_is_square: bool


def cycle_types(f: IntPolynomial,
                prime_budget: int = None) -> list[CycleTypeEvidence]:
    """Degree patterns of f mod the first prime_budget unramified primes.

    Primes dividing disc(f) or lc(f) are skipped; they do not consume
    budget, so the output has exactly prime_budget entries.
    """
    if prime_budget is None:
        prime_budget = DEFAULT_BUDGETS.prime_budget
    disc = discriminant(f)
    x = sympy.Symbol("x")
    out = []
    p = 1
    while len(out) < prime_budget:
        p = sympy.nextprime(p)
        if disc % p == 0 or f.lc % p == 0:
            continue
        poly = sympy.Poly(f.coeffs[::-1], x, modulus=p)
        degs = sorted(g.degree() for g, e in poly.factor_list()[1]
                      for _ in range(e))
        out.append(CycleTypeEvidence(p, tuple(degs)))
    return out


def _is_transposition_power(pattern) -> bool:
    """Some power of an element with this cycle type is a transposition."""
    evens = [c for c in pattern if c % 2 == 0]
    return evens == [2]


def _jordan_prime_part(pattern, d: int):
    """A prime p-cycle part with d/2 < p < d - 2, if present."""
    for c in set(pattern):
        if d / 2 < c < d - 2 and sympy.isprime(c):
            return c
    return None


def contains_alternating_certificate(
        f: IntPolynomial, prime_budget: int = None) -> AlternatingCertificate:
    """Certified iff the observed Frobenius cycle types force A_d <= G."""
    d = f.degree
    if d < 5:
        raise DegreeTooSmall("degree %d < 5" % d)
    if not is_irreducible(f):
        raise ReducibleInput(factor(f))

    evidence = cycle_types(f, prime_budget)
    disc = discriminant(f)
    disc_square = disc >= 0 and sympy.integer_nthroot(disc, 2)[1]

    for ev in evidence:
        if _jordan_prime_part(ev.factorization_degrees, d) is not None:
            return AlternatingCertificate(True, "jordan_prime_cycle", (ev,),
                                          disc_square)

    primitive = None
    transposition = None
    for ev in evidence:
        pat = ev.factorization_degrees
        if primitive is None and ((pat == (d,) and sympy.isprime(d))
                                  or sorted(pat) == [1, d - 1]):
            primitive = ev
        if transposition is None and _is_transposition_power(pat):
            transposition = ev
    if primitive is not None and transposition is not None:
        return AlternatingCertificate(True, "primitive_plus_transposition",
                                      (primitive, transposition), disc_square)
    return AlternatingCertificate(False, None, tuple(evidence), disc_square)
