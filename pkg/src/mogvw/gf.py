"""Arithmetic over GF(p) for small primes.

Coefficients are plain ints kept fully reduced in [0, p); the field object
carries the modulus and the inverse logic.  For p <= 257 inverses come from a
precomputed table, otherwise from Fermat exponentiation.
"""

from __future__ import annotations

MAX_MODULUS = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """GF(p) with p prime, 2 <= p < 2**16."""

    __slots__ = ("p", "_inv_table")

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"field modulus must be prime, got {p}")
        if p >= MAX_MODULUS:
            raise ValueError(f"field modulus must be < 2**16, got {p}")
        self.p = p
        if p <= 257:
            self._inv_table = [0] + [pow(a, p - 2, p) for a in range(1, p)]
        else:
            self._inv_table = None

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"
