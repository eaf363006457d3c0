"""Command-line entry point.

Exit codes: 0 success, 1 verification failure (not a k-cover, inconsistent
facts, failing catalog entry), 2 input or format error. Results go to stdout
(or ``--out``) as JSON; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import bounds, catalog, complexes, covers, formats, nerve
from .errors import Inconsistency, InputError


class _Failure(Exception):
    """Verification failed; carries the JSON payload to emit anyway."""

    def __init__(self, message: str, payload: dict | None = None) -> None:
        super().__init__(message)
        self.payload = payload


def _family(path: str) -> covers.IndexedFamily:
    return formats.family_from_json(formats.load_json(path))


def cmd_verify_cover(args) -> dict:
    fam = _family(args.family)
    ok = covers.is_k_cover_fast(fam, args.k)
    out = {"isKCover": ok, "minOrder": covers.min_order(fam)}
    if not ok:
        raise _Failure(f"family is not a {args.k}-cover", out)
    return out


def cmd_ostrand_extend(args) -> dict:
    fam = _family(args.family)
    action = formats.action_from_json(formats.load_json(args.action)) if args.action else None
    result = covers.ostrand_extend(fam, args.n, args.m, action)
    if not covers.is_k_cover_oracle(result, args.n + 1):
        raise _Failure("extended family is not an (n+1)-cover")
    problem = covers.find_witness_violation(result)
    if problem:
        raise _Failure(f"witness check failed: {problem}")
    return formats.family_to_json(result)


def cmd_product_cover(args) -> dict:
    result = covers.product_cover(_family(args.family_a), args.n, _family(args.family_b), args.m)
    if not covers.covers(result):
        raise _Failure("diagonal product does not cover the product set")
    return formats.family_to_json(result)


def cmd_nerve(args) -> dict:
    return formats.complex_to_json(nerve.nerve_of(_family(args.family)))


def cmd_extend_nerve(args) -> dict:
    space = formats.metric_from_json(formats.load_json(args.metric))
    rel = _family(args.family)
    result = nerve.extend_same_nerve(space, rel.points, rel)
    if nerve.nerve_of(result) != nerve.nerve_of(rel):
        raise _Failure("extension changed the nerve")
    return formats.family_to_json(result)


def _complex(path: str) -> complexes.SimplicialComplex:
    return formats.complex_from_json(formats.load_json(path))


def cmd_cohomology(args) -> dict:
    K = _complex(args.complex)
    R = complexes.cohomology_ring_z2(K)
    return {
        "dimension": complexes.dimension(K),
        "betti": complexes.betti_z2(K),
        "ring": complexes.ring_to_dict(R),
    }


def cmd_zcl(args) -> dict:
    R = complexes.cohomology_ring_z2(_complex(args.complex))
    factors = complexes.zcl_witness(R, args.max_factors)
    return {
        "zcl": len(factors),
        "factors": [sorted([str(x), str(y)] for x, y in f) for f in factors],
    }


def _parse_assumption(text: str) -> tuple[bounds.Quantity, bounds.Interval]:
    try:
        key, rng = text.split("=")
        lo, hi = rng.split(",")
        return bounds.Quantity.parse(key), bounds.Interval(int(lo), bounds.INF if hi == "inf" else int(hi))
    except ValueError:
        raise InputError(f"--assume expects QUANTITY=LO,HI (e.g. TC_space(X)=0,1), got {text!r}") from None


def cmd_bounds(args) -> dict:
    path = Path(args.space)
    desc = formats.space_from_json(formats.load_json(path), path.parent)
    order = args.rule_order.split(",") if args.rule_order else None
    if order is not None and sorted(order) != sorted(bounds.RULES):
        raise InputError(f"--rule-order must be a permutation of {','.join(bounds.RULES)}")
    report = bounds.bounds_for(desc, order)
    for text in args.assume or ():
        q, iv = _parse_assumption(text)
        report = bounds.propagate(bounds.assert_fact(report, q, iv, "asserted on the command line"), order)
    bounds.check_consistency(report)
    return report.to_json()


def cmd_catalog_run(args) -> dict:
    entries = catalog.load_catalog(args.catalog) if args.catalog else catalog.load_catalog()
    results = catalog.run_all(entries)
    out = {"entries": [r.to_json() for r in results], "allPassed": all(r.passed for r in results)}
    if not out["allPassed"]:
        bad = ", ".join(r.name for r in results if not r.passed)
        raise _Failure(f"catalog entries failed: {bad}", out)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tcbounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", help="write the JSON result here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("verify-cover", cmd_verify_cover, "check whether a family is a k-cover")
    p.add_argument("--family", required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("ostrand-extend", cmd_ostrand_extend, "extend an (n+1)-set cover to m+1 sets")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--action", help="permutation action the input sets are invariant under")

    p = add("product-cover", cmd_product_cover, "diagonal product of an (n+1)-cover and an (m+1)-cover")
    p.add_argument("--family-a", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family-b", required=True)
    p.add_argument("--m", type=int, required=True)

    p = add("nerve", cmd_nerve, "nerve of a family")
    p.add_argument("--family", required=True)

    p = add("extend-nerve", cmd_extend_nerve, "extend a relative cover with the same nerve")
    p.add_argument("--metric", required=True)
    p.add_argument("--family", required=True, help="cover of a subset; its points are the subset")

    p = add("cohomology", cmd_cohomology, "Z/2 Betti numbers and cohomology ring")
    p.add_argument("--complex", required=True)

    p = add("zcl", cmd_zcl, "zero-divisor cup length over Z/2")
    p.add_argument("--complex", required=True)
    p.add_argument("--max-factors", type=int)

    p = add("bounds", cmd_bounds, "derive TC / cat bounds for a space descriptor")
    p.add_argument("--space", required=True)
    p.add_argument("--rule-order", help="comma-separated rule ids, e.g. R14,R13,...,R0")
    p.add_argument("--assume", action="append", metavar="QUANTITY=LO,HI",
                   help="extra fact to intersect in, e.g. 'TC_space(X)=0,1'")

    p = add("catalog-run", cmd_catalog_run, "check the engine against the catalog")
    p.add_argument("--catalog", help="catalog JSON (default: the bundled one)")
    return parser


def _emit(payload: dict, out: str | None) -> None:
    text = formats.dumps(payload)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Inconsistency as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return 1
    except _Failure as exc:
        print(f"failed: {exc}", file=sys.stderr)
        if exc.payload is not None:
            _emit(exc.payload, args.out)
        return 1
    _emit(payload, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
