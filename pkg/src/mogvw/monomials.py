"""Monomials, module monomials and the two orders used everywhere.

A monomial is an exponent vector, one entry per ring variable; it doubles as
its own hash key.  The polynomial order is graded reverse lexicographic and
the module order is the position-over-term extension (lower generator index
dominates, so e1 is the largest unit vector).
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import DivisibilityError

LT, EQ, GT = -1, 0, 1

#: Largest exponent the fixed-width representation supports.
MAX_EXPONENT = 0xFFFF

_KEY_CACHE: dict = {}


class Monomial(tuple):
    """Exponent vector with grevlex comparison semantics.

    Instances are plain tuples underneath, so hashing and equality are the
    fast C implementations.  Multiplication lives on :class:`~mogvw.ring.Ring`
    because it depends on the ring mode (quotient capping, overflow checks);
    everything mode-independent lives here.
    """

    __slots__ = ()

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def is_one(self) -> bool:
        return not any(self)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self, other))

    def div(self, other: "Monomial") -> "Monomial":
        """Exact quotient self / other; raises unless other divides self."""
        if not other.divides(self):
            raise DivisibilityError(f"{other!r} does not divide {self!r}")
        return Monomial(a - b for a, b in zip(self, other))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(a if a >= b else b for a, b in zip(self, other))

    def sort_key(self):
        """Key whose natural (ascending) order is ascending grevlex.

        Keys are memoized: hot paths sort the same monomials over and over.
        """
        k = _KEY_CACHE.get(self)
        if k is None:
            k = (sum(self), tuple(-e for e in reversed(self)))
            _KEY_CACHE[self] = k
        return k

    # Rich comparisons follow grevlex rather than tuple order on purpose:
    # sorting a list of monomials must agree with the ring order.
    def __lt__(self, other):
        return mono_cmp(self, other) < 0

    def __le__(self, other):
        return mono_cmp(self, other) <= 0

    def __gt__(self, other):
        return mono_cmp(self, other) > 0

    def __ge__(self, other):
        return mono_cmp(self, other) >= 0

    def __repr__(self):
        return f"Monomial{tuple(self)!r}"


def mono_cmp(a: Monomial, b: Monomial) -> int:
    """Grevlex comparison: degree first, then the last differing exponent,
    where the *smaller* trailing exponent wins."""
    da = sum(a)
    db = sum(b)
    if da != db:
        return LT if da < db else GT
    if tuple.__eq__(a, b):
        return EQ
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return GT if x < y else LT
    return EQ


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Plain componentwise product (no quotient capping, no overflow check).

    Ring-aware code should call :meth:`mogvw.ring.Ring.mono_mul` instead.
    """
    return Monomial(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return a.div(b)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


class Signature(NamedTuple):
    """Module monomial ``mono * e_index``; generator indices are 1-based."""

    index: int
    mono: Monomial

    def divides(self, other: "Signature") -> bool:
        return self.index == other.index and self.mono.divides(other.mono)


def sig_cmp(a: Signature, b: Signature) -> int:
    """Position-over-term comparison: e1 > e2 > ...; ties fall back to grevlex."""
    if a.index != b.index:
        return GT if a.index < b.index else LT
    return mono_cmp(a.mono, b.mono)


def sig_key(s: Signature):
    """Key whose ascending order is ascending position-over-term order."""
    return (-s.index, s.mono.sort_key())


def cmp_mono(a: Monomial, b: Monomial) -> int:
    return mono_cmp(a, b)


def cmp_sig(a: Signature, b: Signature) -> int:
    return sig_cmp(a, b)
