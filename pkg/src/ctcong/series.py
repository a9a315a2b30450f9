"""Box-truncated multivariate power series and rational constant-term extraction."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import product

from . import _accel
from .laurent import LaurentPoly
from .numeric import sym_mod


class NonUnitConstantTerm(ArithmeticError):
    """The cleared denominator has a constant term that is not invertible."""


class OutOfBox(IndexError):
    pass


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of a power series for exponents ``0 <= e_j <= box[j]``.

    ``data`` is row-major over ``vars``. With ``modulus=None`` coefficients
    are exact integers, otherwise they are stored in ``[0, modulus)`` and
    reported as symmetric residues.
    """

    vars: tuple
    box: tuple
    modulus: int | None
    data: list

    def _flat(self, e) -> int:
        f = 0
        for i, b in zip(e, self.box):
            if not 0 <= i <= b:
                raise OutOfBox(f"exponent {tuple(e)} outside box {self.box}")
            f = f * (b + 1) + i
        return f

    def _key(self, exps) -> tuple:
        if isinstance(exps, Mapping):
            extra = [v for v, k in exps.items() if k and v not in self.vars]
            if extra:
                raise OutOfBox(f"variables {extra} are not series variables")
            return tuple(exps.get(v, 0) for v in self.vars)
        return tuple(exps)

    def coeff(self, exps) -> int:
        c = self.data[self._flat(self._key(exps))]
        return c if self.modulus is None else sym_mod(c, self.modulus)

    def coefficients(self) -> dict:
        """Nonzero coefficients keyed by exponent tuple."""
        out = {}
        ranges = [range(b + 1) for b in self.box]
        for e, c in zip(product(*ranges), self.data):
            if self.modulus is not None:
                c = sym_mod(c, self.modulus)
            if c:
                out[e] = c
        return out

    def __len__(self):
        return len(self.data)


def _normalize_box(box, vars) -> tuple:
    if isinstance(box, int):
        return (box,) * len(vars)
    if isinstance(box, Mapping):
        return tuple(int(box.get(v, 0)) for v in vars)
    box = tuple(box)
    if len(box) != len(vars):
        raise ValueError(f"box {box} does not match variables {vars}")
    return box


def _unit_inverse(c: int, m: int | None, what: str) -> int:
    if m is None:
        if c not in (1, -1):
            raise NonUnitConstantTerm(f"{what}: constant term {c} is not +-1 over the integers")
        return c
    if math.gcd(c, m) != 1:
        raise NonUnitConstantTerm(f"{what}: constant term {c} is not invertible mod {m}")
    return pow(c, -1, m)


def _divide_by(data, vars, box, R: LaurentPoly, m):
    terms = R.in_vars(vars)
    zero = (0,) * len(vars)
    lead = terms.pop(zero, 0)
    if m is not None:
        lead %= m
    inv = _unit_inverse(lead, m, str(R))
    offsets, coeffs = [], []
    for e, c in terms.items():
        if any(i < 0 for i in e):
            raise ValueError(f"{R} has negative exponents; clear it first")
        if all(i <= b for i, b in zip(e, box)):
            offsets.append(e)
            coeffs.append(c if m is None else c % m)
    shape = [b + 1 for b in box]
    return _accel.series_divide(data, shape, offsets, coeffs, inv, m)


def _one(box, m) -> list:
    n = 1
    for b in box:
        n *= b + 1
    data = [0] * n
    data[0] = 1
    return data


def invert_unit(R: LaurentPoly, m: int | None, box, vars=None) -> TruncatedSeries:
    """Truncated inverse of ``R`` (no negative exponents, unit constant term) mod ``m``."""
    vars = tuple(sorted(set(vars or ()) | set(R.vars)))
    box = _normalize_box(box, vars)
    data = _divide_by(_one(box, m), vars, box, R, m)
    return TruncatedSeries(vars, box, m, data)


def invert_product(factors, m: int | None, box, vars) -> TruncatedSeries:
    """Truncated inverse of the product of ``factors`` (each cleared, unit constant term).

    The product is never expanded: the series for 1 is divided by one factor
    after another, which yields the same truncated coefficients.
    """
    vars = tuple(vars)
    box = _normalize_box(box, vars)
    data = _one(box, m)
    for R in factors:
        data = _divide_by(data, vars, box, R, m)
    return TruncatedSeries(vars, box, m, data)


@dataclass(frozen=True)
class PreparedRational:
    """``numer / prod(factors)`` rewritten with polynomial, unit-constant denominators."""

    numerator: LaurentPoly
    factors: tuple
    shift: dict
    vars: tuple
    box: tuple


def prepare_rational(numer: LaurentPoly, denom_factors, m: int | None) -> PreparedRational:
    cleared = []
    shift: dict = {}
    for D in denom_factors:
        if m is not None:
            D = D.mod_reduce(m)
        if D.is_zero():
            raise NonUnitConstantTerm("denominator factor vanishes")
        R, mult = D.clear_denominator()
        c = R.constant_term()
        _unit_inverse(c if m is None else c % m, m, str(D))
        cleared.append(R)
        for v, k in mult.items():
            shift[v] = shift.get(v, 0) + k
    N = numer.shift(shift) if shift else numer
    if m is not None:
        N = N.mod_reduce(m)
    vars = set(N.vars)
    for R in cleared:
        vars |= set(R.vars)
    vars = tuple(sorted(vars))
    box = [0] * len(vars)
    for e in N.in_vars(vars):
        if all(i <= 0 for i in e):
            box = [max(b, -i) for b, i in zip(box, e)]
    return PreparedRational(N, tuple(cleared), shift, vars, tuple(box))


def rational_ct(numer: LaurentPoly, denom_factors, m: int | None, box=None) -> int:
    """Constant term of ``numer / prod(denom_factors)`` expanded as a power series.

    Each factor is cleared to a polynomial with a unit constant term; the
    numerator absorbs the monomial shifts. Only numerator terms with every
    exponent <= 0 can meet the series, and they fix the truncation box. A
    larger ``box`` may be passed; it cannot change the result.
    """
    return prepared_ct(prepare_rational(numer, denom_factors, m), m, box)


def prepared_ct(prep: PreparedRational, m: int | None, box=None) -> int:
    if prep.numerator.is_zero():
        return 0
    vars = prep.vars
    if box is None:
        box = prep.box
    else:
        box = tuple(max(a, b) for a, b in zip(_normalize_box(box, vars), prep.box))
    S = invert_product(prep.factors, m, box, vars)
    total = 0
    for e, c in prep.numerator.in_vars(vars).items():
        if all(i <= 0 for i in e):
            total += c * S.data[S._flat([-i for i in e])]
    return total if m is None else sym_mod(total, m)


def diagonal(S: TruncatedSeries, n: int) -> int:
    """Coefficient of ``(x y)^n`` in a bivariate series."""
    if len(S.vars) != 2:
        raise ValueError("diagonal needs a bivariate series")
    return S.coeff((n, n))
