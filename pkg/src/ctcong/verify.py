"""Engine vs brute-force oracle vs closed-form prediction, one row per (spec, r, p, k)."""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

from .ctseq import REGISTRY, SequenceSpec, get_spec, partial_sum_exact
from .engine import chz_sum_mod_p, has_prediction, predicted_residue
from .numeric import primes_in, sym_mod
from .parallel import pmap


@dataclass(frozen=True)
class Row:
    spec: str
    r: tuple
    p: int
    k: int
    engine: int
    oracle: int
    predicted: int | None
    passed: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["r"] = list(self.r)
        d["pass"] = d.pop("passed")
        return d

    def line(self) -> str:
        status = "ok  " if self.passed else "FAIL"
        pred = "-" if self.predicted is None else self.predicted
        return (
            f"{status} {self.spec} r={','.join(map(str, self.r))} p={self.p} k={self.k}"
            f"  engine={self.engine} oracle={self.oracle} predicted={pred}"
        )


def verify_row(spec: SequenceSpec, r, p: int, k: int = 1, oracle_method: str = "auto") -> Row:
    """Compare the mod-p engine, the mod-p^k oracle and the lifted prediction.

    ``engine`` is always the mod-p value; it must agree with the oracle reduced
    mod p. Without a known closed form only that agreement is checked.
    """
    r = tuple(int(i) for i in r)
    m = p**k
    engine = chz_sum_mod_p(spec, r, p)
    oracle = partial_sum_exact(spec, [ri * p for ri in r], m, method=oracle_method)
    ok = engine == sym_mod(oracle, p)
    predicted = None
    if has_prediction(spec):
        predicted = sym_mod(predicted_residue(spec, r, p), m)
        ok = ok and oracle == predicted
    return Row(spec.id, r, p, k, engine, oracle, predicted, ok)


def _row_task(args):
    return verify_row(*args)


def r_grid(arity: int, rmax: int):
    return list(itertools.product(range(1, rmax + 1), repeat=arity))


def row_params(spec: SequenceSpec, pmax: int, rmax: int, k: int = 1, max_terms: int | None = None,
               pmin: int | None = None):
    """(params, skipped) for all admissible (r, p); rows over ``max_terms`` oracle terms are skipped."""
    params, skipped = [], 0
    for p in primes_in(max(spec.min_prime, pmin or 0), pmax):
        for r in r_grid(spec.arity, rmax):
            if max_terms is not None and math.prod(ri * p for ri in r) > max_terms:
                skipped += 1
                continue
            params.append((spec, r, p, k))
    return params, skipped


def run_rows(params) -> list:
    rows = pmap(_row_task, params)
    return sorted(rows, key=lambda row: (row.spec, row.r, row.p, row.k))


def verifiable_specs() -> list:
    """Built-in specs, in registry order."""
    return list(REGISTRY.values())


def resolve_specs(name: str) -> list:
    if name == "all":
        return verifiable_specs()
    return [get_spec(name)]
