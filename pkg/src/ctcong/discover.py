"""Pattern mining over primes: residue-class case maps and super-congruence levels."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ctseq import SequenceSpec, partial_sum_exact
from .engine import FAMILIES, ClosedFormFamily, chz_sum_mod_p, closed_form
from .numeric import primes_in, sym_mod
from .parallel import pmap

CANDIDATE_MODULI = (1, 3, 4, 5, 6, 8, 12)
MAX_CONSTANT = 64
MIN_PRIMES = 6
SCALES = (1, -1, 2, -2)

# mod-p results established by proof for these families (and parameters)
_PROVED = {"central_binomial", "catalan", "motzkin", "multinomial"}


class NoPatternFound(LookupError):
    pass


@dataclass(frozen=True)
class CaseValue:
    """Value ``scale * family`` or a plain constant (``family is None``)."""

    value: int
    scale: int = 1
    family: ClosedFormFamily | None = None

    def __str__(self):
        if self.family is None:
            return f"{self.value:+d}"
        sign = "-" if self.scale < 0 else "+"
        mag = abs(self.scale)
        return f"{sign}{'' if mag == 1 else f'{mag}*'}{self.family}"


@dataclass
class CongruenceClaim:
    spec_id: str
    r: tuple
    modulus: int
    cases: dict
    super_level: int = 1
    evidence: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    status: str = "observed"

    def value_for(self, p: int) -> int:
        return self.cases[p % self.modulus].value

    def describe(self) -> str:
        cases = ", ".join(f"{c}: {v}" for c, v in sorted(self.cases.items()))
        return (
            f"{self.spec_id} r={list(self.r)}: p mod {self.modulus} -> {{{cases}}}, "
            f"super_level {self.super_level} ({self.status})"
        )

    def to_dict(self) -> dict:
        return {
            "spec": self.spec_id,
            "r": list(self.r),
            "modulus": self.modulus,
            "cases": {str(c): str(v) for c, v in sorted(self.cases.items())},
            "case_values": {str(c): v.value for c, v in sorted(self.cases.items())},
            "super_level": self.super_level,
            "status": self.status,
            "evidence": [list(e) for e in self.evidence],
            "counterexamples": [list(c) for c in self.counterexamples],
        }


def default_primes(spec: SequenceSpec, pmax: int | None = None) -> list:
    if pmax is None:
        pmax = 100 if spec.arity == 1 else 50
    return primes_in(spec.min_prime, pmax)


def _applicable_families(spec: SequenceSpec, r) -> list:
    n = len(r)
    out = []
    for tag in FAMILIES:
        if tag in ("alpha", "beta", "gamma", "delta") and n == 1:
            out.append(ClosedFormFamily(tag, tuple(r)))
        elif tag == "epsilon" and n == 2:
            out.append(ClosedFormFamily(tag, tuple(r)))
        elif tag == "kappa" and n >= 2:
            out.append(ClosedFormFamily(tag, tuple(r)))
    return out


def _candidates(spec: SequenceSpec, r):
    yield CaseValue(0)
    for c in range(1, MAX_CONSTANT + 1):
        yield CaseValue(c)
        yield CaseValue(-c)
    for fam in _applicable_families(spec, r):
        v = closed_form(fam)
        for s in SCALES:
            yield CaseValue(s * v, s, fam)


def _match(observed: dict, candidates) -> CaseValue | None:
    for cand in candidates:
        if all(sym_mod(cand.value, p) == res for p, res in observed.items()):
            return cand
    return None


def _mod_p_residue(args):
    spec, r, p = args
    return chz_sum_mod_p(spec, r, p)


def _check_primes(spec, primes):
    primes = sorted(set(int(p) for p in primes))
    if len(primes) < MIN_PRIMES:
        raise ValueError(f"need at least {MIN_PRIMES} primes, got {len(primes)}")
    low = [p for p in primes if p < spec.min_prime]
    if low:
        raise ValueError(f"{spec.id} needs primes >= {spec.min_prime}, got {low}")
    return primes


def classify(spec: SequenceSpec, r, primes, candidate_moduli=CANDIDATE_MODULI) -> CongruenceClaim:
    """Find the smallest modulus m* whose residue classes explain the mod-p sums.

    Every class must match one candidate value on all of its primes. Candidates
    are tried as constants 0, 1, -1, 2, -2, ... up to 64, then as
    ``scale * family`` for families evaluated at the given ``r``.
    """
    r = tuple(int(i) for i in r)
    primes = _check_primes(spec, primes)
    residues = dict(zip(primes, pmap(_mod_p_residue, [(spec, r, p) for p in primes])))
    candidates = list(_candidates(spec, r))
    for m in candidate_moduli:
        classes: dict = {}
        for p in primes:
            classes.setdefault(p % m, {})[p] = residues[p]
        cases = {}
        for c, observed in sorted(classes.items()):
            hit = _match(observed, candidates)
            if hit is None:
                break
            cases[c] = hit
        else:
            claim = CongruenceClaim(spec.id, r, m, cases)
            claim.status = _status(spec, r)
            claim.evidence = [(p, residues[p]) for p in primes]
            return claim
    raise NoPatternFound(f"{spec.id} r={list(r)}: no pattern modulo {list(candidate_moduli)}")


def _status(spec: SequenceSpec, r) -> str:
    if spec.direct in _PROVED:
        return "proved"
    if spec.direct == "binomial_squared" and tuple(r) == (1, 1):
        return "proved"
    return "observed"


def _lifted_residues(args):
    spec, r, p = args
    top = partial_sum_exact(spec, [ri * p for ri in r], p**3)
    return tuple(sym_mod(top, p**k) for k in (1, 2, 3))


def super_level(spec: SequenceSpec, r, primes, claim: CongruenceClaim | None = None) -> CongruenceClaim:
    """Largest k <= 3 such that the mod-p case map holds mod p^k at every prime.

    Returns the claim with ``super_level``, evidence ``(p, res mod p, p^2, p^3)``
    and, for every level above the result, the failing primes as
    ``(p, k, expected, observed)``.
    """
    r = tuple(int(i) for i in r)
    primes = _check_primes(spec, primes)
    if claim is None:
        claim = classify(spec, r, primes)
    lifted = pmap(_lifted_residues, [(spec, r, p) for p in primes])
    level = 3
    counter = []
    for p, obs in zip(primes, lifted):
        v = claim.value_for(p)
        for k in (1, 2, 3):
            expected = sym_mod(v, p**k)
            if obs[k - 1] != expected:
                counter.append((p, k, expected, obs[k - 1]))
                level = min(level, k - 1)
    if level < 1:
        bad = [c for c in counter if c[1] == 1]
        raise RuntimeError(f"mod-p oracle contradicts the case map: {bad}")
    claim.super_level = level
    claim.evidence = [(p,) + obs for p, obs in zip(primes, lifted)]
    claim.counterexamples = sorted(c for c in counter if c[1] > claim.super_level)
    return claim


def discover(spec: SequenceSpec, r, primes=None) -> CongruenceClaim:
    """classify followed by super_level over the same primes."""
    if primes is None:
        primes = default_primes(spec)
    claim = classify(spec, r, primes)
    return super_level(spec, r, primes, claim)
