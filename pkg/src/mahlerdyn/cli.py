"""Command-line front end.

Subcommands: measure | classify | orbit | family | verify | census.
Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 internal error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import multiprocessing
import os
import sys
import tempfile

from . import families as fam
from .algnum import make, is_rational_integer
from .config import Budgets, DEFAULT_BUDGETS
from .errors import MahlerError, ParameterOutOfRange
from .intpoly import (IntPolynomial, factor, format_poly, is_irreducible,
                      parse_poly)
from .mahler import classify, mahler_measure
from .orbit import detect_square_relations, iterate

CHECKPOINT_EVERY = 20


def _budgets_from(args) -> Budgets:
    b = DEFAULT_BUDGETS
    updates = {}
    if args.precision_ceiling is not None:
        updates["precision_ceiling"] = args.precision_ceiling
    if args.max_iter is not None:
        updates["max_iter"] = args.max_iter
    if args.degree_cap is not None:
        updates["degree_cap"] = args.degree_cap
    if args.subset_cap is not None:
        updates["subset_cap"] = args.subset_cap
    return dataclasses.replace(b, **updates) if updates else b


def _factors_of(text: str):
    f = parse_poly(text)
    return [g for g, _ in factor(f) if g.degree >= 1]


def _emit(args, payload: dict):
    if args.json:
        print(json.dumps(payload))
    else:
        print(json.dumps(payload, indent=2))


def cmd_measure(args) -> int:
    budgets = _budgets_from(args)
    for g in _factors_of(args.poly):
        a = make(g, precision_ceiling=budgets.precision_ceiling)
        res = mahler_measure(a, budgets)
        _emit(args, {
            "factor": format_poly(g),
            "measure": res.value.to_json(),
            "measure_integer": is_rational_integer(res.value),
            "outside_count": res.outside_count,
        })
    return 0


def cmd_classify(args) -> int:
    budgets = _budgets_from(args)
    for g in _factors_of(args.poly):
        a = make(g, precision_ceiling=budgets.precision_ceiling)
        _emit(args, {"factor": format_poly(g),
                     "class": classify(a, budgets).to_json()})
    return 0


def cmd_orbit(args) -> int:
    budgets = _budgets_from(args)
    for g in _factors_of(args.poly):
        a = make(g, precision_ceiling=budgets.precision_ceiling)
        record = iterate(a, budgets, min_steps=args.min_steps)
        if args.relations:
            detect_square_relations(record, budgets)
        _emit(args, record.to_json())
    return 0


def cmd_family(args) -> int:
    spec = fam.FamilySpec(args.name, d=args.d, l=args.l, c=args.c)
    inst = fam.family_polynomial(spec)
    _emit(args, {
        "family": args.name,
        "polynomial": format_poly(inst.polynomial),
        "coeffs": list(inst.polynomial.coeffs),
        "orbit_size": inst.orbit_size,
        "terminal": inst.terminal,
    })
    return 0


def _verify_deg12(args, budgets: Budgets) -> int:
    # the identification steps of this orbit need very deep precision; give
    # the suite a roomy default ceiling unless one was passed explicitly
    if args.precision_ceiling is None:
        budgets = dataclasses.replace(
            budgets, precision_ceiling=max(budgets.precision_ceiling, 2**24))
    unit = fam.build_large_orbit_unit(args.k, args.S, budgets)
    record = iterate(unit.number, budgets)
    measured = (record.orbit_size
                if record.status.tag == "FixedPointReached" else None)
    ok = (unit.polynomial.degree == 4 * args.k
          and measured == unit.orbit_size and unit.orbit_size > args.S)
    _emit(args, {
        "suite": "deg12", "k": args.k, "S": args.S, "ell": unit.ell,
        "s_prime": unit.s_prime, "predicted_orbit_size": unit.orbit_size,
        "measured_orbit_size": measured, "confirmed": ok,
    })
    return 0 if ok else 1


def _verify_families(args, budgets: Budgets) -> int:
    failures = []
    grid = [("pisot_anynorm", range(3, 9)), ("orbit2", range(3, 9)),
            ("cubic_orbit4", (3,)), ("cubic_orbit3", (3,)),
            ("quartic_orbit4", (4,)), ("sparse_orbit3", range(4, 9))]
    for l in (-5, -4, -3, -2, 2, 3, 4, 5):
        for name, degrees in grid:
            for d in degrees:
                try:
                    inst = fam.family_polynomial(fam.FamilySpec(name, d=d,
                                                                l=l))
                except ParameterOutOfRange:
                    continue
                rec = iterate(make(inst.polynomial), budgets)
                if (rec.status.tag != "FixedPointReached"
                        or rec.orbit_size != inst.orbit_size):
                    failures.append((name, d, l))
    _emit(args, {"suite": "families", "failures": failures})
    return 0 if not failures else 1


def _verify_thmst(args, budgets: Budgets) -> int:
    failures = []
    checked = 0
    for d in range(3, 7):
        for l in (-4, -3, -2, 2, 3, 4):
            for c in range(2, 6):
                try:
                    inst = fam.theorem_st_polynomial(d, l, c)
                except ParameterOutOfRange:
                    continue
                checked += 1
                rec = iterate(make(inst.polynomial), budgets)
                pred = fam.predict_orbit_size_prop4(inst.polynomial, budgets)
                n = abs(l)**(fam.b_sequence(d, c).values[-1] - 1)
                loc = fam.check_root_localization(d, l, n, budgets)
                if not (rec.orbit_size == c + 2 == pred and loc["all"]):
                    failures.append((d, l, c))
    _emit(args, {"suite": "thmst", "checked": checked, "failures": failures})
    return 0 if not failures else 1


def cmd_verify(args) -> int:
    budgets = _budgets_from(args)
    if args.suite == "deg12":
        return _verify_deg12(args, budgets)
    if args.suite == "families":
        return _verify_families(args, budgets)
    if args.suite in ("thmst", "rootloc", "prop4"):
        return _verify_thmst(args, budgets)
    raise ParameterOutOfRange("unknown suite %r" % (args.suite,))


# ---------------------------------------------------------------------------
# census


def _flip_tuple(c):
    return tuple(x if i % 2 == 0 else -x for i, x in enumerate(c))


def _reverse_tuple(c):
    r = c[::-1]
    if r[-1] < 0:
        r = tuple(-x for x in r)
    return r


def _canonical(c):
    c = tuple(c)
    f = _flip_tuple(c)
    return min(c, f, _reverse_tuple(c), _reverse_tuple(f))


def census_polynomials(degree: int, height: int, unit_only: bool):
    """Deterministic list of canonical monic irreducible polynomials."""
    consts = ((-1, 1) if unit_only
              else tuple(x for x in range(-height, height + 1) if x != 0))
    seen = set()

    def rec(prefix):
        if len(prefix) == degree:
            seen.add(_canonical(tuple(prefix) + (1,)))
            return
        for x in range(-height, height + 1):
            rec(prefix + [x])

    for a0 in consts:
        rec([a0])
    out = []
    for c in sorted(seen):
        f = IntPolynomial.of(list(c))
        if f.degree == degree and is_irreducible(f):
            out.append(f)
    return out


_WORKER_BUDGETS = DEFAULT_BUDGETS


def _census_init(budgets):
    global _WORKER_BUDGETS
    _WORKER_BUDGETS = budgets


def _census_record(coeffs) -> dict:
    f = IntPolynomial.of(list(coeffs))
    record = {"coeffs": list(coeffs), "degree": f.degree,
              "unit": abs(f.constant) == 1}
    try:
        rec = iterate(make(f), _WORKER_BUDGETS)
    except MahlerError as exc:
        record["status"] = "Error"
        record["error"] = type(exc).__name__
        return record
    if rec.status.tag == "FixedPointReached":
        record["orbit_size"] = rec.orbit_size
    else:
        record["status"] = rec.status.tag
        if rec.status.reason:
            record["reason"] = rec.status.reason
        if rec.status.limit:
            record["limit"] = rec.status.limit
    return record


def _write_checkpoint(path: str, done: int):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ckpt")
    with os.fdopen(fd, "w") as fh:
        json.dump({"done": done}, fh)
    os.replace(tmp, path)


def cmd_census(args) -> int:
    budgets = _budgets_from(args)
    polys = census_polynomials(args.degree, args.height, args.unit_only)
    done = 0
    if args.checkpoint and os.path.exists(args.checkpoint):
        with open(args.checkpoint) as fh:
            done = json.load(fh)["done"]
    todo = [f.coeffs for f in polys[done:]]
    out = open(args.out, "a") if args.out else sys.stdout

    def consume(records):
        nonlocal done
        for record in records:
            out.write(json.dumps(record) + "\n")
            done += 1
            if args.checkpoint and done % CHECKPOINT_EVERY == 0:
                out.flush()
                _write_checkpoint(args.checkpoint, done)

    try:
        if args.jobs > 1:
            with multiprocessing.Pool(args.jobs, _census_init,
                                      (budgets,)) as pool:
                consume(pool.imap(_census_record, todo, chunksize=4))
        else:
            _census_init(budgets)
            consume(map(_census_record, todo))
    finally:
        out.flush()
        if args.checkpoint:
            _write_checkpoint(args.checkpoint, done)
        if args.out:
            out.close()
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mahlerdyn",
        description="Exact iteration of the Mahler measure on "
                    "algebraic numbers")
    p.add_argument("--precision-ceiling", type=int, metavar="BITS")
    p.add_argument("--max-iter", type=int)
    p.add_argument("--degree-cap", type=int)
    p.add_argument("--subset-cap", type=int)
    p.add_argument("--json", action="store_true",
                   help="compact one-line JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("measure", help="exact Mahler measure per factor")
    sp.add_argument("--poly", required=True)
    sp.set_defaults(func=cmd_measure)

    sp = sub.add_parser("classify", help="number-class per factor")
    sp.add_argument("--poly", required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("orbit", help="iterate M and report the orbit")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--min-steps", type=int, default=0)
    sp.add_argument("--relations", action="store_true",
                    help="also detect square relations")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("family", help="generate a family member")
    sp.add_argument("name", choices=fam.FAMILY_NAMES)
    sp.add_argument("--d", type=int)
    sp.add_argument("--l", type=int)
    sp.add_argument("--c", type=int)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite",
                    choices=("deg12", "families", "thmst", "rootloc",
                             "prop4"))
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--S", type=int, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("census", help="orbit census over a coefficient box")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--unit-only", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out")
    sp.add_argument("--checkpoint")
    sp.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParameterOutOfRange, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except MahlerError as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print("internal error: %s: %s" % (type(exc).__name__, exc),
              file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
