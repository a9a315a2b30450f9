"""Sparse multivariate Laurent polynomials with exact integer coefficients."""

from __future__ import annotations

from collections.abc import Mapping

from .numeric import sym_mod


class ZeroPolynomialError(ValueError):
    pass


def _add_exps(a, b):
    return tuple([i + j for i, j in zip(a, b)])


class LaurentPoly:
    """Immutable sparse Laurent polynomial.

    ``vars`` is the sorted tuple of variables that occur with a nonzero
    exponent somewhere; ``terms`` maps exponent tuples aligned with ``vars``
    to nonzero integers. Both are canonical, so structural equality is
    mathematical equality.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms=None, vars=()):
        self.vars, self.terms = _canonical(tuple(vars), dict(terms or {}))
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        obj = cls.__new__(cls)
        obj.vars, obj.terms = _canonical(vars, terms)
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls._raw((), {(): c})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> LaurentPoly:
        return cls._raw((name,), {(exp,): 1})

    @classmethod
    def from_items(cls, items) -> LaurentPoly:
        items = [(dict(e), c) for e, c in items]
        names = sorted({v for e, _ in items for v in e})
        out: dict = {}
        for e, c in items:
            key = tuple(e.get(v, 0) for v in names)
            out[key] = out.get(key, 0) + c
        return cls._raw(tuple(names), out)

    # -- views ------------------------------------------------------------

    def items(self):
        """Yield ``(exponent dict, coefficient)`` pairs, zero exponents omitted."""
        for e, c in self.terms.items():
            yield {v: k for v, k in zip(self.vars, e) if k}, c

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def in_vars(self, names) -> dict:
        """Terms re-indexed by the sorted variable tuple ``names`` (a superset of ``vars``)."""
        names = tuple(names)
        if names == self.vars:
            return dict(self.terms)
        missing = set(self.vars) - set(names)
        if missing:
            raise ValueError(f"variables {sorted(missing)} not in {names}")
        idx = [self.vars.index(v) if v in self.vars else None for v in names]
        return {
            tuple(0 if i is None else e[i] for i in idx): c for e, c in self.terms.items()
        }

    # -- ring operations --------------------------------------------------

    def _aligned(self, other):
        other = _coerce(other)
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        names = tuple(sorted(set(self.vars) | set(other.vars)))
        return names, self.in_vars(names), other.in_vars(names)

    def __add__(self, other):
        names, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly._raw(names, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        names, a, b = self._aligned(other)
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = _add_exps(ea, eb)
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw(names, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            # only units of the Laurent ring, +-monomials, have inverses
            if len(self.terms) != 1 or next(iter(self.terms.values())) not in (1, -1):
                raise ValueError(f"{self} is not invertible as a Laurent polynomial")
            (exps, c), = self.terms.items()
            return LaurentPoly._raw(self.vars, {tuple(-i for i in exps): c}) ** -e
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({render(self)!r})"

    def __str__(self):
        return render(self)

    # -- substitutions and extraction -------------------------------------

    def subst_power(self, var: str, k: int) -> LaurentPoly:
        """Replace ``var`` by ``var**k``."""
        if k < 1:
            raise ValueError("substitution power must be positive")
        if var not in self.vars or k == 1:
            return self
        i = self.vars.index(var)
        return LaurentPoly._raw(
            self.vars,
            {e[:i] + (e[i] * k,) + e[i + 1:]: c for e, c in self.terms.items()},
        )

    def frobenius(self, k: int) -> LaurentPoly:
        """Substitute ``x -> x**k`` in every variable at once."""
        if k < 1:
            raise ValueError("substitution power must be positive")
        return LaurentPoly._raw(
            self.vars, {tuple(i * k for i in e): c for e, c in self.terms.items()}
        )

    def coeff_at(self, exps: Mapping[str, int]) -> int:
        if any(v not in self.vars for v, k in exps.items() if k):
            return 0
        key = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(key, 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.vars), 0)

    def min_exponent(self, var: str) -> int:
        if not self.terms:
            raise ZeroPolynomialError("minimum exponent of the zero polynomial")
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def shift(self, exps: Mapping[str, int]) -> LaurentPoly:
        """Multiply by the monomial with exponent vector ``exps``."""
        return self * LaurentPoly.from_items([(exps, 1)])

    def clear_denominator(self) -> tuple[LaurentPoly, dict[str, int]]:
        """Return ``(self * x^m, m)`` with ``m`` the smallest monomial making all exponents nonnegative."""
        if not self.terms:
            return self, {}
        mult = {v: -self.min_exponent(v) for v in self.vars if self.min_exponent(v) < 0}
        if not mult:
            return self, {}
        return self.shift(mult), mult

    def mod_reduce(self, m: int) -> LaurentPoly:
        return LaurentPoly._raw(self.vars, {e: sym_mod(c, m) for e, c in self.terms.items()})

    def map_exponents(self, fn, names) -> LaurentPoly:
        """Apply ``fn`` to every exponent tuple; the results are indexed by ``names``."""
        out: dict = {}
        for e, c in self.terms.items():
            key = tuple(fn(e))
            out[key] = out.get(key, 0) + c
        return LaurentPoly._raw(tuple(names), out)

    def total_degree_range(self) -> tuple[int, int]:
        degs = [sum(e) for e in self.terms]
        return min(degs), max(degs)


def _canonical(vars, terms):
    terms = {e: c for e, c in terms.items() if c}
    if vars and terms:
        used = [i for i in range(len(vars)) if any(e[i] for e in terms)]
        if len(used) != len(vars) or list(vars) != sorted(vars):
            order = sorted(used, key=lambda i: vars[i])
            vars = tuple(vars[i] for i in order)
            terms = {tuple(e[i] for i in order): c for e, c in terms.items()}
    elif not terms:
        vars = ()
    return vars, terms


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()


def monomial(exps: Mapping[str, int], coeff: int = 1) -> LaurentPoly:
    return LaurentPoly.from_items([(exps, coeff)])


def sort_key(e):
    """Graded order: total degree first, then earlier variables with higher exponents."""
    return (sum(e), tuple(-i for i in e))


def _render_monomial(vars, e) -> str:
    parts = []
    for v, k in zip(vars, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def render(P: LaurentPoly) -> str:
    """Canonical text, e.g. ``x^-1 + 2 + x``; parses back to the same polynomial."""
    if not P.terms:
        return "0"
    out = []
    for e in sorted(P.terms, key=sort_key):
        c = P.terms[e]
        mono = _render_monomial(P.vars, e)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)
