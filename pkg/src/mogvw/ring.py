"""Ring context: GF(p)[x1..xn] under grevlex, optionally modulo x_i^2 = x_i.

The ring object owns every operation whose meaning depends on the modulus or
on boolean (quotient) mode: monomial products, polynomial normalization and
linear combinations, and text formatting of monomials and polynomials.
"""

from __future__ import annotations

from .errors import CapacityError, ZeroPolynomialError
from .gf import PrimeField
from .monomials import MAX_EXPONENT, Monomial
from .poly import Polynomial

GREVLEX = "grevlex"


class Ring:
    """Configuration and arithmetic for one polynomial ring."""

    __slots__ = ("names", "n", "p", "boolean", "field", "mono_one", "variables", "order")

    def __init__(self, names, p: int, boolean: bool = False, order: str = GREVLEX):
        names = list(names)
        if not names:
            raise ValueError("ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if order != GREVLEX:
            raise ValueError(f"unsupported monomial order {order!r}")
        self.names = names
        self.n = len(names)
        self.p = p
        self.boolean = bool(boolean)
        self.field = PrimeField(p)
        self.order = order
        self.mono_one = Monomial((0,) * self.n)
        self.variables = [
            Monomial(tuple(1 if j == i else 0 for j in range(self.n))) for i in range(self.n)
        ]

    @classmethod
    def with_vars(cls, n: int, p: int, boolean: bool = False) -> "Ring":
        return cls([f"x{i + 1}" for i in range(n)], p, boolean)

    # ------------------------------------------------------------------
    # monomials

    def mono(self, exps) -> Monomial:
        exps = tuple(exps)
        if len(exps) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(exps)}")
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be nonnegative")
        if any(e > MAX_EXPONENT for e in exps):
            raise CapacityError("exponent exceeds 16-bit capacity")
        if self.boolean:
            exps = tuple(1 if e else 0 for e in exps)
        return Monomial(exps)

    def mono_mul(self, a: Monomial, b: Monomial) -> Monomial:
        if self.boolean:
            return Monomial(1 if x or y else 0 for x, y in zip(a, b))
        out = Monomial(x + y for x, y in zip(a, b))
        if sum(out) > MAX_EXPONENT and any(e > MAX_EXPONENT for e in out):
            raise CapacityError("exponent exceeds 16-bit capacity")
        return out

    def mono_mul_var(self, m: Monomial, i: int) -> Monomial:
        """Multiply by the i-th variable (0-based)."""
        e = m[i]
        if self.boolean:
            if e:
                return m
            return Monomial(m[:i] + (1,) + m[i + 1 :])
        if e >= MAX_EXPONENT:
            raise CapacityError("exponent exceeds 16-bit capacity")
        return Monomial(m[:i] + (e + 1,) + m[i + 1 :])

    # ------------------------------------------------------------------
    # polynomials

    def poly(self, pairs) -> "Polynomial":
        """Build a normalized polynomial from (monomial, coefficient) pairs."""
        p = self.p
        acc: dict[Monomial, int] = {}
        for m, c in pairs:
            if self.boolean and sum(m) and any(e > 1 for e in m):
                m = Monomial(1 if e else 0 for e in m)
            c = (acc.get(m, 0) + c) % p
            if c:
                acc[m] = c
            elif m in acc:
                del acc[m]
        terms = sorted(acc.items(), key=lambda t: t[0].sort_key(), reverse=True)
        return Polynomial(terms)

    def mul_mono(self, f: "Polynomial", t: Monomial) -> "Polynomial":
        """Multiply a polynomial by a monomial.

        In boolean mode distinct terms may collapse onto the same capped
        monomial, so the result is re-normalized; the leading term always
        survives because the exact cofactor is support-disjoint from it.
        """
        if t.is_one or f.is_zero:
            return f
        if not self.boolean:
            return Polynomial(tuple((self.mono_mul(m, t), c) for m, c in f.terms))
        p = self.p
        acc: dict[Monomial, int] = {}
        for m, c in f.terms:
            mt = Monomial(1 if x or y else 0 for x, y in zip(m, t))
            c = (acc.get(mt, 0) + c) % p
            if c:
                acc[mt] = c
            elif mt in acc:
                del acc[mt]
        terms = sorted(acc.items(), key=lambda u: u[0].sort_key(), reverse=True)
        return Polynomial(terms)

    def scale(self, f: "Polynomial", c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return Polynomial()
        if c == 1:
            return f
        p = self.p
        return Polynomial(tuple((m, (k * c) % p) for m, k in f.terms))

    def combine(self, cf: int, tf: Monomial, f: "Polynomial", cg: int, tg: Monomial, g: "Polynomial") -> "Polynomial":
        """Normalized ``cf * tf * f - cg * tg * g``."""
        p = self.p
        acc: dict[Monomial, int] = {}
        cf %= p
        cg %= p
        if cf and not f.is_zero:
            left = self.mul_mono(f, tf)
            for m, c in left.terms:
                acc[m] = (c * cf) % p
        if cg and not g.is_zero:
            right = self.mul_mono(g, tg)
            for m, c in right.terms:
                c = (acc.get(m, 0) - c * cg) % p
                if c:
                    acc[m] = c
                elif m in acc:
                    del acc[m]
        terms = sorted(
            ((m, c) for m, c in acc.items() if c),
            key=lambda t: t[0].sort_key(),
            reverse=True,
        )
        return Polynomial(terms)

    def monic(self, f: "Polynomial") -> "Polynomial":
        if f.is_zero:
            raise ZeroPolynomialError("cannot normalize the zero polynomial")
        lc = f.lc()
        if lc == 1:
            return f
        return self.scale(f, self.field.inv(lc))

    # ------------------------------------------------------------------
    # formatting

    def format_mono(self, m: Monomial | None) -> str:
        if m is None:
            return "0"
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def format_poly(self, f: "Polynomial") -> str:
        if f.is_zero:
            return "0"
        half = self.p // 2
        chunks = []
        for m, c in f.terms:
            if self.p > 2 and c > half:
                sign, mag = "-", self.p - c
            else:
                sign, mag = "+", c
            if m.is_one:
                body = str(mag)
            elif mag == 1:
                body = self.format_mono(m)
            else:
                body = f"{mag}*{self.format_mono(m)}"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = first_body if first_sign == "+" else f"-{first_body}"
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def format_sig(self, sig) -> str:
        return f"{self.format_mono(sig.mono)}*e{sig.index}"

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and other.names == self.names
            and other.p == self.p
            and other.boolean == self.boolean
        )

    def __hash__(self):
        return hash((tuple(self.names), self.p, self.boolean))

    def __repr__(self):
        mode = ", boolean" if self.boolean else ""
        return f"Ring(GF({self.p})[{', '.join(self.names)}]{mode})"
