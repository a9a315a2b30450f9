"""Partial sums of constant-term sequences modulo p without summing p terms.

For a spec CT[Q * prod B_i^n_i] and multipliers r_i, the sum over
``0 <= n_i < r_i p`` is a constant term of

    Q * prod_i (B_i^(r_i p) - 1) / (B_i - 1)

by geometric-series collapse. Modulo p, ``B^(r p) = B^r(x^p)`` (Frobenius),
so the numerator has small support and the constant term is read off a
truncated power-series expansion of ``1 / prod(B_i - 1)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ctseq import SequenceSpec, _catalan, _central_trinomial, partial_sum_exact
from .laurent import LaurentPoly
from .numeric import NotPrime, is_prime, multinomial_exact, sym_mod
from .series import (
    NonUnitConstantTerm,
    PreparedRational,
    prepare_rational,
    prepared_ct,
)

MAX_R = 8


class PrimeTooSmall(ValueError):
    pass


class UnknownPattern(LookupError):
    pass


@dataclass(frozen=True)
class ReducedExpression:
    """``numerator / prod(denominator_factors)`` whose constant term is the sum mod p.

    ``numerator`` is ``Q * prod(B_i^r_i(x^p) - 1)`` reduced mod p, in the
    sequence's own variables. The factors are the cleared ``B_i - 1`` in the
    working variables; when ``transform`` is set the working variables are
    ``u1..un`` with exponent vectors ``transform @ e`` (a monomial change of
    variables, which preserves constant terms).
    """

    numerator: LaurentPoly
    denominator_factors: tuple
    monomial_shift: dict
    modulus: int
    box: tuple
    vars: tuple
    transform: tuple | None
    prepared: PreparedRational


def _validate(spec: SequenceSpec, r, p: int):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p < spec.min_prime:
        raise PrimeTooSmall(f"{spec.id} needs p >= {spec.min_prime}, got {p}")
    if len(r) != spec.arity:
        raise ValueError(f"{spec.id} takes {spec.arity} multipliers, got {len(r)}")
    if any(not 1 <= ri <= MAX_R for ri in r):
        raise ValueError(f"multipliers must lie in 1..{MAX_R}")


def frobenius_numerator(spec: SequenceSpec, r, p: int) -> LaurentPoly:
    N = spec.multiplier.mod_reduce(p)
    for B, ri in zip(spec.bases, r):
        N = (N * ((B**ri).frobenius(p) - 1)).mod_reduce(p)
    return N


def chz_reduce(spec: SequenceSpec, r, p: int) -> ReducedExpression:
    r = tuple(int(i) for i in r)
    _validate(spec, r, p)
    N = frobenius_numerator(spec, r, p)
    D = [(B - 1).mod_reduce(p) for B in spec.bases]
    if any(d.is_zero() for d in D):
        raise NonUnitConstantTerm("a base is congruent to 1 mod p")
    try:
        prep = prepare_rational(N, D, p)
        T, shift = None, prep.shift
    except NonUnitConstantTerm:
        T, prep, shift = _transformed(N, D, p)
    return ReducedExpression(N, prep.factors, shift, p, prep.box, prep.vars, T, prep)


def chz_sum_mod_p(spec: SequenceSpec, r, p: int) -> int:
    """Sum over ``0 <= n_i < r_i p`` of the sequence, as a symmetric residue mod p."""
    red = chz_reduce(spec, r, p)
    return prepared_ct(red.prepared, p)


# -- monomial change of variables ---------------------------------------------
#
# When some cleared B_i - 1 has no unit constant term (e.g. (y+z)/x), pick a
# vertex of each factor as its lead and an integer matrix T of full rank with
# T(e - lead) >= 0 for every other term e. In the new variables each factor is
# a lead monomial times a power series with unit constant term. The quotient
# is a Laurent polynomial mod p, so any such expansion has the right constant
# term.


def _rank(rows) -> int:
    M = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def _weight_candidates(n: int):
    yield (1,) * n
    yield tuple(range(1, n + 1))
    yield tuple(range(n, 0, -1))
    yield (-1,) * n
    yield tuple(-i for i in range(1, n + 1))
    rng = random.Random(20160609)
    for _ in range(40):
        yield tuple(rng.randint(-9, 9) for _ in range(n))


@lru_cache(maxsize=None)
def _functionals(n: int, bound: int):
    return [
        f for f in itertools.product(range(-bound, bound + 1), repeat=n) if any(f)
    ]


def _dot(a, b):
    return sum(i * j for i, j in zip(a, b))


def _leads(factor_terms, w):
    leads = []
    for terms in factor_terms:
        weights = sorted((_dot(w, e), e) for e in terms)
        if len(weights) > 1 and weights[0][0] == weights[1][0]:
            return None
        leads.append(weights[0][1])
    return leads


def _choose_transform(vars, N, factor_terms, w):
    leads = _leads(factor_terms, w)
    if leads is None:
        return None
    n = len(vars)
    diffs = {
        tuple(a - b for a, b in zip(e, lead))
        for terms, lead in zip(factor_terms, leads)
        for e in terms
        if e != lead
    }
    total_lead = [sum(l[j] for l in leads) for j in range(n)]
    shifted = [tuple(a - b for a, b in zip(e, total_lead)) for e in N.in_vars(vars)]
    for bound in (1, 2, 3):
        scored = []
        for f in _functionals(n, bound):
            if all(_dot(f, d) >= 0 for d in diffs):
                cost = max(0, max(-_dot(f, e) for e in shifted)) if shifted else 0
                scored.append((cost, sum(map(abs, f)), f))
        scored.sort()
        rows: list = []
        for _, _, f in scored:
            if _rank(rows + [f]) > len(rows):
                rows.append(f)
                if len(rows) == n:
                    return tuple(rows)
    return None


def _apply(P: LaurentPoly, vars, T, names) -> LaurentPoly:
    out: dict = {}
    for e, c in P.in_vars(vars).items():
        key = tuple(_dot(row, e) for row in T)
        out[key] = out.get(key, 0) + c
    return LaurentPoly(out, names)


def _transformed(N: LaurentPoly, D, p: int):
    names = set(N.vars)
    for d in D:
        names |= set(d.vars)
    vars = tuple(sorted(names))
    factor_terms = [list(d.in_vars(vars)) for d in D]
    new_names = tuple(f"u{i}" for i in range(1, len(vars) + 1))
    for w in _weight_candidates(len(vars)):
        T = _choose_transform(vars, N, factor_terms, w)
        if T is None:
            continue
        N2 = _apply(N, vars, T, new_names)
        D2 = []
        shift: dict = {}
        for d in D:
            d2 = _apply(d, vars, T, new_names)
            # divide by the lead monomial, which is the componentwise minimum
            low = {v: -d2.min_exponent(v) for v in d2.vars}
            D2.append(d2.shift(low))
            N2 = N2.shift(low)
            for v, k in low.items():
                shift[v] = shift.get(v, 0) + k
        try:
            prep = prepare_rational(N2, D2, p)
        except NonUnitConstantTerm:
            continue
        return T, prep, {v: k for v, k in shift.items() if k}
    raise NonUnitConstantTerm("no monomial order gives every factor a unit lead term")


# -- closed forms and predictions ---------------------------------------------

FAMILIES = ("alpha", "beta", "gamma", "delta", "epsilon", "kappa")


@dataclass(frozen=True)
class ClosedFormFamily:
    tag: str
    params: tuple

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise ValueError(f"unknown family {self.tag!r}")
        if not self.params or any(int(r) < 1 for r in self.params):
            raise ValueError("family parameters must be positive")

    @property
    def value(self) -> int:
        return closed_form(self)

    def __str__(self):
        return f"{self.tag}_{','.join(map(str, self.params))}"


def closed_form(cf: ClosedFormFamily) -> int:
    ps = tuple(int(i) for i in cf.params)
    r = ps[0]
    if cf.tag == "alpha":
        return sum(_binom_c(n) for n in range(r))
    if cf.tag == "beta":
        return sum(_catalan(n) for n in range(r))
    if cf.tag == "gamma":
        return sum((3 * n + 2) * _catalan(n) for n in range(r))
    if cf.tag == "delta":
        return sum(_central_trinomial(n) for n in range(r))
    if cf.tag == "epsilon":
        r, s = ps
        return sum(
            multinomial_exact((n, m)) ** 2 for m in range(r) for n in range(s)
        )
    return sum(multinomial_exact(idx) for idx in itertools.product(*[range(i) for i in ps]))


def _binom_c(n):
    return multinomial_exact((n, n))


def _pattern(spec: SequenceSpec, r, p: int):
    """(sign or None, family) describing the predicted value for this p."""
    r = tuple(r)
    kind = spec.direct
    if kind == "central_binomial":
        return (1 if p % 3 == 1 else -1), ClosedFormFamily("alpha", r)
    if kind == "catalan":
        if p % 3 == 1:
            return 1, ClosedFormFamily("beta", r)
        return -1, ClosedFormFamily("gamma", r)
    if kind == "motzkin":
        return (2 if p % 4 == 1 else -2), ClosedFormFamily("delta", r)
    if kind == "binomial_squared":
        return (1 if p % 3 == 1 else -1), ClosedFormFamily("epsilon", r)
    if kind == "multinomial":
        return 1, ClosedFormFamily("kappa", r)
    raise UnknownPattern(f"no closed-form prediction for {spec.id}")


def has_prediction(spec: SequenceSpec) -> bool:
    return spec.direct in ("central_binomial", "catalan", "motzkin", "binomial_squared", "multinomial")


def predicted_family(spec: SequenceSpec, r, p: int) -> ClosedFormFamily:
    return _pattern(spec, r, p)[1]


def predicted_residue(spec: SequenceSpec, r, p: int) -> int:
    """Predicted integer value of the sum; compare after reducing mod p (or p^k).

    Returned unreduced, e.g. ``2 * delta_2 = 4`` for motzkin at p = 5.
    """
    scale, fam = _pattern(spec, r, p)
    return scale * fam.value


def super_check(spec: SequenceSpec, r, p: int, k: int) -> tuple[int, bool]:
    """Brute-force sum mod p^k and whether it equals the lifted prediction."""
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    _validate(spec, tuple(r), p)
    m = p**k
    value = partial_sum_exact(spec, [ri * p for ri in r], m)
    return value, value == sym_mod(predicted_residue(spec, r, p), m)
