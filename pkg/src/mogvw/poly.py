"""Normalized polynomial container plus input interreduction.

A polynomial is a tuple of (monomial, coefficient) pairs in strictly
descending grevlex order with no zero coefficients; the zero polynomial is
the empty tuple.  Arithmetic that needs the modulus or the quotient mode
lives on :class:`mogvw.ring.Ring`.
"""

from __future__ import annotations

import warnings

from .monomials import Monomial


class Polynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=()):
        # Trusted constructor: callers hand in normalized term tuples.
        self.terms = tuple(terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def lm(self) -> Monomial | None:
        """Leading monomial; ``None`` is the lm(0) sentinel, below everything."""
        return self.terms[0][0] if self.terms else None

    def lc(self) -> int:
        return self.terms[0][1] if self.terms else 0

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return self.terms[0][0].degree if self.terms else -1

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and other.terms == self.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "Polynomial(0)"
        body = " + ".join(f"{c}*{tuple(m)}" for m, c in self.terms)
        return f"Polynomial({body})"


ZERO = Polynomial()


def preprocess_inputs(polys, ring):
    """Interreduce an input list until leading monomials are pairwise distinct.

    Zero polynomials are dropped with a warning; the returned list is monic
    and spans the same ideal as the input.
    """
    by_lead: dict[Monomial, Polynomial] = {}
    for f in polys:
        if f.is_zero:
            warnings.warn("dropping zero polynomial from input system")
            continue
        g = ring.monic(f)
        while not g.is_zero:
            other = by_lead.get(g.lm())
            if other is None:
                break
            # cancel the shared lead against the resident polynomial
            g = ring.combine(1, ring.mono_one, g, g.lc(), ring.mono_one, other)
        if not g.is_zero:
            g = ring.monic(g)
            by_lead[g.lm()] = g
    return list(by_lead.values())
