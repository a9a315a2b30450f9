"""Exact integers, primes, symmetric residues and binomial coefficients mod p^k.

Residues are plain ``int`` values in the symmetric range ``(-m/2, m/2]``; the
modulus travels with the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class InvalidModulus(ValueError):
    pass


class NotPrime(ValueError):
    pass


def sym_mod(a: int, m: int) -> int:
    """Reduce ``a`` modulo ``m`` into the symmetric range ``(-m/2, m/2]``.

    >>> sym_mod(6, 5), sym_mod(4, 5), sym_mod(0, 7)
    (1, -1, 0)
    """
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    a %= m
    if 2 * a > m:
        a -= m
    return a


def is_prime(n: int) -> bool:
    # trial division; callers stay below 10**6
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_in(lo: int, hi: int) -> list[int]:
    """All primes in the closed interval ``[lo, hi]``, ascending."""
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


@dataclass(frozen=True)
class PrimePower:
    p: int
    k: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.k not in (1, 2, 3):
            raise ValueError(f"exponent must be 1, 2 or 3, got {self.k}")

    @property
    def modulus(self) -> int:
        return self.p**self.k


def as_prime_power(m: int) -> PrimePower | None:
    """Return ``PrimePower(p, k)`` when ``m == p**k`` with ``k <= 3``, else None."""
    for k in (1, 2, 3):
        p = round(m ** (1.0 / k))
        for q in (p - 1, p, p + 1):
            if q >= 2 and q**k == m and is_prime(q):
                return PrimePower(q, k)
    return None


def binomial_exact(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial_exact(parts) -> int:
    """(sum parts)! / prod(parts!) as a chain of binomials."""
    total = 0
    result = 1
    for m in parts:
        total += m
        result *= math.comb(total, m)
    return result


class PadicFactorials:
    """Factorials split as ``n! = p**val[n] * unit[n]`` with ``unit[n]`` a unit mod p^k.

    Tables grow on demand and are shared per ``(p, k)`` through :func:`padic_table`.
    """

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.modulus = p**k
        self.val = [0]
        self.unit = [1]
        self._inv = [1]

    def extend(self, n: int) -> None:
        p, m = self.p, self.modulus
        val, unit = self.val, self.unit
        for i in range(len(val), n + 1):
            j, e = i, 0
            while j % p == 0:
                j //= p
                e += 1
            val.append(val[-1] + e)
            unit.append(unit[-1] * j % m)

    def inv_unit(self, n: int) -> int:
        if n >= len(self._inv):
            self.extend(n)
            m = self.modulus
            self._inv.extend(pow(u, -1, m) for u in self.unit[len(self._inv):])
        return self._inv[n]

    def tables(self, n: int) -> tuple[list[int], list[int], list[int]]:
        """Return ``(val, unit, inv_unit)`` covering ``0..n``."""
        self.inv_unit(n)
        return self.val, self.unit, self._inv

    def binomial(self, n: int, j: int) -> int:
        """C(n, j) mod p^k in the range ``[0, p^k)``."""
        if j < 0 or j > n:
            return 0
        self.inv_unit(n)
        e = self.val[n] - self.val[j] - self.val[n - j]
        if e >= self.k:
            return 0
        return self.p**e * self.unit[n] * self._inv[j] * self._inv[n - j] % self.modulus


@lru_cache(maxsize=None)
def padic_table(p: int, k: int) -> PadicFactorials:
    return PadicFactorials(p, k)


def binomial_mod_pk(n: int, k: int, pp: PrimePower) -> int:
    """C(n, k) modulo ``pp.modulus`` as a symmetric residue, without big factorials.

    >>> binomial_mod_pk(9, 4, PrimePower(5, 3))
    1
    """
    return sym_mod(padic_table(pp.p, pp.k).binomial(n, k), pp.modulus)
