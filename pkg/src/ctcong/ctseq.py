"""Sequence families given as constant terms CT[Q * prod B_i^n_i], with direct formulas."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import product

from . import _accel
from .laurent import ONE, LaurentPoly
from .numeric import as_prime_power, multinomial_exact, padic_table, sym_mod


class UnknownSequence(KeyError):
    pass


@dataclass(frozen=True)
class SequenceSpec:
    id: str
    bases: tuple
    multiplier: LaurentPoly = ONE
    direct: str | None = None
    min_prime: int = 3
    symmetry: int | None = None
    description: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.bases:
            raise ValueError("a sequence needs at least one base")
        if self.min_prime not in (3, 5):
            raise ValueError("min_prime must be 3 or 5")

    @property
    def arity(self) -> int:
        return len(self.bases)

    @property
    def vars(self) -> tuple:
        names = set(self.multiplier.vars)
        for B in self.bases:
            names |= set(B.vars)
        return tuple(sorted(names))

    @property
    def builtin(self) -> bool:
        return self.direct is not None


def _catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _motzkin(n: int) -> int:
    return sum(math.comb(n, 2 * k) * _catalan(k) for k in range(n // 2 + 1))


def _central_trinomial(n: int) -> int:
    return sum(math.comb(n, 2 * k) * math.comb(2 * k, k) for k in range(n // 2 + 1))


_DIRECT = {
    "central_binomial": lambda idx: math.comb(2 * idx[0], idx[0]),
    "catalan": lambda idx: _catalan(idx[0]),
    "motzkin": lambda idx: _motzkin(idx[0]),
    "central_trinomial": lambda idx: _central_trinomial(idx[0]),
    "binomial_squared": lambda idx: math.comb(idx[0] + idx[1], idx[1]) ** 2,
    "multinomial": multinomial_exact,
}


# single-index terms modulo p^k, never dividing by multiples of p
def _cb_mod(n, F):
    return F.binomial(2 * n, n)


def _cat_mod(n, F):
    return F.binomial(2 * n, n) - F.binomial(2 * n, n - 1)


def _mot_mod(n, F):
    return sum(F.binomial(n, 2 * k) * _cat_mod(k, F) for k in range(n // 2 + 1))


def _tri_mod(n, F):
    return sum(F.binomial(n, 2 * k) * F.binomial(2 * k, k) for k in range(n // 2 + 1))


_PADIC_SINGLE = {
    "central_binomial": _cb_mod,
    "catalan": _cat_mod,
    "motzkin": _mot_mod,
    "central_trinomial": _tri_mod,
}

# families whose terms are multinomial(n)**power
_PADIC_BOX = {"binomial_squared": 2, "multinomial": 1}


def _x(n=1):
    return LaurentPoly.var("x", n)


def _build_registry() -> dict:
    x, y = _x(), LaurentPoly.var("y")
    xi = _x(-1)
    specs = [
        SequenceSpec(
            "central_binomial", (2 + x + xi,), ONE, "central_binomial", 5, 3,
            "C(2n, n)",
        ),
        SequenceSpec("catalan", (2 + x + xi,), 1 - x, "catalan", 5, 3, "Catalan numbers"),
        SequenceSpec("motzkin", (1 + x + xi,), 1 - x**2, "motzkin", 3, 4, "Motzkin numbers"),
        SequenceSpec(
            "central_trinomial", (1 + x + xi,), ONE, "central_trinomial", 3, None,
            "central trinomial coefficients",
        ),
        SequenceSpec(
            "binomial_squared",
            ((1 + y) * (1 + xi), (1 + x) * (1 + LaurentPoly.var("y", -1))),
            ONE, "binomial_squared", 5, 3, "C(n+m, m)^2",
        ),
    ]
    reg = {s.id: s for s in specs}
    for v in (2, 3, 4, 5):
        reg[f"multinomial{v}"] = multinomial_spec(v)
    return reg


def multinomial_spec(v: int) -> SequenceSpec:
    if v < 2:
        raise ValueError("multinomial sequences need at least two indices")
    xs = [LaurentPoly.var(f"x{i}") for i in range(1, v + 1)]
    total = sum(xs[1:], xs[0])
    bases = tuple(total * LaurentPoly.var(f"x{i}", -1) for i in range(1, v + 1))
    return SequenceSpec(
        f"multinomial{v}", bases, ONE, "multinomial", 3, 1, f"{v}-part multinomials"
    )


REGISTRY = _build_registry()


def get_spec(name: str) -> SequenceSpec:
    if name in REGISTRY:
        return REGISTRY[name]
    m = re.fullmatch(r"multinomial(\d+)", name)
    if m and int(m.group(1)) >= 2:
        return multinomial_spec(int(m.group(1)))
    raise UnknownSequence(name)


def custom_spec(bases, multiplier: LaurentPoly = ONE, name: str = "custom") -> SequenceSpec:
    return SequenceSpec(name, tuple(bases), multiplier, None, 3, None, "user supplied")


def _check_indices(spec, indices):
    if len(indices) != spec.arity:
        raise ValueError(f"{spec.id} takes {spec.arity} indices, got {len(indices)}")


def ct_term(spec: SequenceSpec, indices) -> int:
    """CT[Q * prod B_i^n_i] by exact expansion."""
    _check_indices(spec, indices)
    P = spec.multiplier
    for B, n in zip(spec.bases, indices):
        P = P * B**n
    return P.constant_term()


def direct_term(spec: SequenceSpec, indices) -> int:
    """The same term from binomial formulas; user specs fall back to ct_term."""
    _check_indices(spec, indices)
    if spec.direct is None:
        return ct_term(spec, indices)
    return _DIRECT[spec.direct](tuple(indices))


def _box(bounds):
    return product(*[range(b) for b in bounds])


def _sum_exact(spec, bounds, m):
    if spec.direct is not None:
        f = _DIRECT[spec.direct]
        return sym_mod(sum(f(idx) for idx in _box(bounds)), m)
    # user spec: expand the geometric sums of each base mod m, then take CT
    P = spec.multiplier.mod_reduce(m)
    for B, b in zip(spec.bases, bounds):
        G = LaurentPoly()
        power = ONE
        B = B.mod_reduce(m)
        for _ in range(b):
            G = G + power
            power = (power * B).mod_reduce(m)
        P = (P * G.mod_reduce(m)).mod_reduce(m)
    return sym_mod(P.constant_term(), m)


def has_padic_path(spec: SequenceSpec) -> bool:
    return spec.direct in _PADIC_SINGLE or spec.direct in _PADIC_BOX


def _sum_padic(spec, bounds, pp, force_python=False):
    p, k = pp.p, pp.k
    F = padic_table(p, k)
    if spec.direct in _PADIC_SINGLE:
        f = _PADIC_SINGLE[spec.direct]
        total = sum(f(n, F) for n in range(bounds[0]))
        return sym_mod(total, pp.modulus)
    power = _PADIC_BOX[spec.direct]
    val, unit, inv = F.tables(sum(bounds))
    total = _accel.multinomial_box_sum(
        list(bounds), val, unit, inv, p, k, power, force_python=force_python
    )
    return sym_mod(total, pp.modulus)


def partial_sum_exact(spec: SequenceSpec, bounds, m: int, method: str = "auto") -> int:
    """Sum of the sequence over ``0 <= n_i < bounds_i`` as a symmetric residue mod ``m``.

    ``method`` is ``"exact"`` (big-integer sum), ``"padic"`` (p-adic factorial
    tables, needs ``m = p**k``), ``"padic-python"`` (same without the compiled
    kernel) or ``"auto"``.
    """
    bounds = [int(b) for b in bounds]
    _check_indices(spec, bounds)
    if any(b <= 0 for b in bounds):
        raise ValueError("bounds must be positive")
    if method == "exact":
        return _sum_exact(spec, bounds, m)
    pp = as_prime_power(m)
    if method == "auto":
        if pp is None or not has_padic_path(spec):
            return _sum_exact(spec, bounds, m)
        return _sum_padic(spec, bounds, pp)
    if method in ("padic", "padic-python"):
        if pp is None:
            raise ValueError(f"{m} is not a prime power p^k with k <= 3")
        if not has_padic_path(spec):
            raise ValueError(f"no p-adic evaluator for {spec.id}")
        return _sum_padic(spec, bounds, pp, force_python=method == "padic-python")
    raise ValueError(f"unknown method {method!r}")
