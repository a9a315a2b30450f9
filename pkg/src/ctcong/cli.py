"""Command-line front end: ``ctcong sum | verify | discover | selftest``."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, acceptance
from .ctseq import UnknownSequence, custom_spec, get_spec, partial_sum_exact
from .discover import CaseValue, NoPatternFound, default_primes, discover
from .engine import (
    ClosedFormFamily,
    PrimeTooSmall,
    chz_sum_mod_p,
    closed_form,
    has_prediction,
    predicted_family,
)
from .numeric import InvalidModulus, NotPrime, is_prime
from .oeis_client import lookup
from .parser import ParseError, parse_poly
from .series import NonUnitConstantTerm
from .verify import resolve_specs, row_params, run_rows

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NONUNIT = 3
EXIT_PRIME = 4


def _error(kind: str, message: str, code: int, **extra) -> int:
    print(json.dumps({"error": kind, "message": message, **extra}), file=sys.stderr)
    return code


def _parse_r(text: str) -> tuple:
    try:
        r = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not r or any(i < 1 for i in r):
        raise argparse.ArgumentTypeError("multipliers must be positive")
    return r


def _spec_from_args(args):
    if args.seq and args.poly:
        raise ValueError("give either --seq or --poly, not both")
    if args.seq:
        return get_spec(args.seq)
    if not args.poly:
        raise ValueError("one of --seq or --poly is required")
    bases = [parse_poly(src) for src in args.poly]
    mult = parse_poly(args.mult) if args.mult else parse_poly("1")
    return custom_spec(bases, mult)


def _fit_r(spec, r):
    if r is None:
        return (1,) * spec.arity
    if len(r) == 1 and spec.arity > 1:
        return r * spec.arity
    return r


def _report(command, results, passed: int, failed: int, extra=None) -> dict:
    out = {
        "version": __version__,
        "command": command,
        "results": results,
        "summary": {"pass": passed, "fail": failed},
    }
    if extra:
        out["summary"].update(extra)
    return out


def _emit_json(report: dict):
    print(json.dumps(report, indent=2, sort_keys=False))


# -- subcommands --------------------------------------------------------------


def cmd_sum(args) -> int:
    spec = _spec_from_args(args)
    r = _fit_r(spec, args.r)
    p = args.p
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if args.power == 1:
        value = chz_sum_mod_p(spec, r, p)
    else:
        if p < spec.min_prime:
            raise PrimeTooSmall(f"{spec.id} needs p >= {spec.min_prime}, got {p}")
        value = partial_sum_exact(spec, [ri * p for ri in r], p**args.power)
    print(value)
    return 0


def cmd_verify(args, argv) -> int:
    rows, skipped = [], 0
    for spec in resolve_specs(args.seq):
        params, sk = row_params(spec, args.pmax, args.rmax, k=args.super, max_terms=args.max_terms)
        skipped += sk
        rows += run_rows(params)
    rows.sort(key=lambda row: (row.spec, row.r, row.p, row.k))
    npass = sum(row.passed for row in rows)
    nfail = len(rows) - npass
    if args.format == "json":
        _emit_json(_report(argv, [row.to_dict() for row in rows], npass, nfail, {"skipped": skipped}))
    else:
        for row in rows:
            print(row.line())
        print(f"summary: {npass} pass, {nfail} fail, {skipped} skipped")
    return EXIT_FAIL if nfail else 0


def _family_hint(spec, claim, case: int, value: CaseValue):
    """Closed-form family behind a case: the known prediction, else a matching value."""
    if value.family is not None:
        return value.family
    if has_prediction(spec):
        p = next(e[0] for e in claim.evidence if e[0] % claim.modulus == case)
        return predicted_family(spec, claim.r, p)
    if len(claim.r) == 1:
        for tag in ("alpha", "beta", "gamma", "delta"):
            fam = ClosedFormFamily(tag, claim.r)
            if value.value in {s * closed_form(fam) for s in (1, -1, 2, -2)}:
                return fam
    return None


def _oeis_annotations(spec, claim, mode: str) -> dict:
    out = {}
    for case, value in sorted(claim.cases.items()):
        fam = _family_hint(spec, claim, case, value)
        if fam is None or len(fam.params) != 1 or fam.tag in out:
            continue
        terms = [closed_form(ClosedFormFamily(fam.tag, (i,))) for i in range(1, 11)]
        out[fam.tag] = lookup(terms, mode).to_dict()
    return out


def cmd_discover(args, argv) -> int:
    spec = _spec_from_args(args)
    r = _fit_r(spec, args.r)
    primes = default_primes(spec, args.pmax)
    try:
        claim = discover(spec, r, primes)
    except NoPatternFound as exc:
        result = {"spec": spec.id, "r": list(r), "pattern": None, "message": str(exc)}
        if args.format == "json":
            _emit_json(_report(argv, [result], 0, 0, {"no_pattern": 1}))
        else:
            print(f"no pattern: {exc}")
        return 0
    result = claim.to_dict()
    if args.oeis:
        result["oeis"] = _oeis_annotations(spec, claim, args.oeis)
    if args.format == "json":
        _emit_json(_report(argv, [result], 1, 0))
    else:
        print(claim.describe())
        for p, k, expected, observed in claim.counterexamples[:5]:
            print(f"  counterexample: p={p} mod p^{k}: expected {expected}, observed {observed}")
        for tag, match in result.get("oeis", {}).items():
            ids = ", ".join(match["ids"]) or "no match"
            print(f"  oeis {tag}: {ids} ({match['source']})")
    return 0


def cmd_selftest(args, argv) -> int:
    numbers = args.criteria or None
    emit = print if args.format == "text" else None
    results = acceptance.run(numbers, emit=emit)
    npass = sum(r.passed for r in results)
    nfail = len(results) - npass
    if args.format == "json":
        _emit_json(_report(argv, [r.to_dict() for r in results], npass, nfail))
    else:
        print(f"summary: {npass} pass, {nfail} fail")
    return EXIT_FAIL if nfail else 0


# -- argument parsing ---------------------------------------------------------


def _add_source(p: argparse.ArgumentParser):
    p.add_argument("--seq", help="built-in sequence id")
    p.add_argument(
        "--poly", action="append", metavar="EXPR",
        help="base Laurent polynomial; repeat for multi-index sums",
    )
    p.add_argument("--mult", metavar="EXPR", help="multiplier Q (default 1)")
    p.add_argument("--r", type=_parse_r, metavar="LIST", help="multipliers, e.g. 1 or 1,2,1")


def _criteria(text: str) -> list:
    try:
        nums = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad criterion list {text!r}") from None
    unknown = [n for n in nums if n not in acceptance.CRITERIA]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown criteria {unknown}")
    return nums


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctcong",
        description="Congruences for partial sums of constant-term sequences modulo primes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="sum over 0 <= n_i < r_i p, modulo p (or p^K)")
    _add_source(p)
    p.add_argument("--p", type=int, required=True, help="prime")
    p.add_argument("--power", type=int, default=1, choices=(1, 2, 3), help="report mod p^K")

    p = sub.add_parser("verify", help="engine vs oracle vs prediction over a prime window")
    p.add_argument("--seq", default="all", help="sequence id or 'all'")
    p.add_argument("--pmax", type=int, default=50)
    p.add_argument("--rmax", type=int, default=2)
    p.add_argument("--super", type=int, default=1, choices=(1, 2, 3), metavar="K",
                   help="compare the oracle mod p^K with the lifted prediction")
    p.add_argument("--max-terms", type=int, default=10_000_000,
                   help="skip rows whose brute-force sum has more terms")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("discover", help="find the residue-class pattern and super level")
    _add_source(p)
    p.add_argument("--pmax", type=int, default=None,
                   help="largest prime (default 100 for one index, 50 otherwise)")
    p.add_argument("--oeis", choices=("offline", "online"), help="look up family values")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--criteria", type=_criteria, help="comma-separated criterion numbers")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    command = ["ctcong", *argv]
    try:
        if args.command == "sum":
            return cmd_sum(args)
        if args.command == "verify":
            return cmd_verify(args, command)
        if args.command == "discover":
            return cmd_discover(args, command)
        return cmd_selftest(args, command)
    except ParseError as exc:
        return _error(type(exc).__name__, str(exc), EXIT_USAGE, position=exc.pos)
    except NonUnitConstantTerm as exc:
        return _error("NonUnitConstantTerm", str(exc), EXIT_NONUNIT)
    except (NotPrime, PrimeTooSmall, InvalidModulus) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_PRIME)
    except UnknownSequence as exc:
        return _error("UnknownSequence", f"unknown sequence {exc.args[0]!r}", EXIT_USAGE)
    except ValueError as exc:
        return _error("ValueError", str(exc), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
