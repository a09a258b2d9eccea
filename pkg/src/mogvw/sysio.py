"""System file format, polynomial expression parsing, and seeded generators.

The format is line oriented::

    # comment
    field 5
    vars a b c
    order grevlex
    boolean            (optional; quotient mode)
    poly a*b*c - 1
    poly a*b - c

Expressions use ``+ - * ^`` with integer coefficients; serialization is
canonical, so ``parse(format(parse(text)))`` equals ``parse(text)``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .errors import ParseError
from .monomials import MAX_EXPONENT
from .poly import Polynomial
from .ring import GREVLEX, Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([+\-*^]))")


@dataclass
class System:
    """A parsed input system: ring context plus generator list."""

    ring: Ring
    polys: list[Polynomial]

    @property
    def n_generators(self) -> int:
        return len(self.polys)


def _tokenize(text: str, lineno: int):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stray = text[pos:].lstrip()
            col = len(text) - len(stray) + 1
            raise ParseError(f"unexpected character {stray[0]!r}", lineno, col)
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), m.start(1) + 1))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2) + 1))
        else:
            out.append(("op", m.group(3), m.start(3) + 1))
        pos = m.end()
    return out


def parse_poly(ring: Ring, text: str, lineno: int = 0) -> Polynomial:
    """Parse one polynomial expression in the given ring."""
    tokens = _tokenize(text, lineno)
    if not tokens:
        raise ParseError("empty polynomial expression", lineno, 1)
    var_index = {name: i for i, name in enumerate(ring.names)}
    pairs = []
    k = 0
    sign = 1
    first = True
    while k < len(tokens):
        kind, val, col = tokens[k]
        if kind == "op" and val in "+-":
            sign = 1 if val == "+" else -1
            k += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", lineno, col)
        first = False
        coeff = sign
        exps = [0] * ring.n
        expect_factor = True
        while k < len(tokens):
            kind, val, col = tokens[k]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                if expect_factor:
                    raise ParseError("unexpected '*'", lineno, col)
                expect_factor = True
                k += 1
                continue
            if not expect_factor:
                raise ParseError("expected '*' between factors", lineno, col)
            if kind == "num":
                if val >= ring.p:
                    raise ParseError(
                        f"coefficient {val} out of field GF({ring.p})", lineno, col
                    )
                coeff *= val
                k += 1
            elif kind == "name":
                if val not in var_index:
                    raise ParseError(f"unknown variable {val!r}", lineno, col)
                exp = 1
                k += 1
                if k + 1 < len(tokens) and tokens[k][:2] == ("op", "^"):
                    if tokens[k + 1][0] != "num":
                        raise ParseError("exponent must be an integer", lineno, tokens[k + 1][2])
                    exp = tokens[k + 1][1]
                    if exp > MAX_EXPONENT:
                        raise ParseError("exponent exceeds 16-bit capacity", lineno, tokens[k + 1][2])
                    k += 2
                elif k < len(tokens) and tokens[k][:2] == ("op", "^"):
                    raise ParseError("dangling '^'", lineno, tokens[k][2])
                exps[var_index[val]] += exp
            else:
                raise ParseError(f"unexpected token {val!r}", lineno, col)
            expect_factor = False
        if expect_factor:
            raise ParseError("term is missing a factor", lineno, tokens[k - 1][2] if k else 1)
        pairs.append((ring.mono(exps), coeff))
        sign = 1
    return ring.poly(pairs)


def parse_system(text: str) -> System:
    """Parse a complete system file; errors carry line and column positions."""
    p = None
    names = None
    boolean = False
    order = GREVLEX
    poly_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            try:
                p = int(rest)
            except ValueError:
                raise ParseError(f"bad field modulus {rest!r}", lineno, len(head) + 2)
        elif head == "vars":
            names = rest.split()
            if not names:
                raise ParseError("vars line needs at least one name", lineno, 1)
        elif head == "order":
            if rest != GREVLEX:
                raise ParseError(f"unsupported order {rest!r}", lineno, len(head) + 2)
            order = rest
        elif head == "boolean":
            if rest:
                raise ParseError("boolean takes no argument", lineno, len(head) + 2)
            boolean = True
        elif head == "poly":
            if not rest:
                raise ParseError("poly line needs an expression", lineno, len(head) + 2)
            poly_lines.append((lineno, rest))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, 1)
    if p is None:
        raise ParseError("missing 'field' directive", 1, 1)
    if names is None:
        raise ParseError("missing 'vars' directive", 1, 1)
    try:
        ring = Ring(names, p, boolean=boolean, order=order)
    except ValueError as ex:
        raise ParseError(str(ex), 1, 1)
    if not poly_lines:
        raise ParseError("system contains no polynomials", 1, 1)
    polys = [parse_poly(ring, body, lineno) for lineno, body in poly_lines]
    return System(ring, polys)


def parse_poly_lines(ring: Ring, text: str) -> list[Polynomial]:
    """Parse bare one-polynomial-per-line text in an existing ring."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("poly "):
            line = line[5:].strip()
        out.append(parse_poly(ring, line, lineno))
    return out


def format_system(system: System) -> str:
    ring = system.ring
    lines = [f"field {ring.p}", f"vars {' '.join(ring.names)}", f"order {ring.order}"]
    if ring.boolean:
        lines.append("boolean")
    lines.extend(f"poly {ring.format_poly(f)}" for f in system.polys)
    return "\n".join(lines) + "\n"


def _quadratic_monomials(ring: Ring):
    monos = [ring.mono_one]
    monos.extend(ring.variables)
    n = ring.n
    for i in range(n):
        for j in range(i, n):
            if i == j and ring.boolean:
                continue
            exps = [0] * n
            exps[i] += 1
            exps[j] += 1
            monos.append(ring.mono(exps))
    return monos


def gen_random_square(n: int, seed: int, p: int = 2, boolean: bool = True,
                      field_equations: bool = False) -> System:
    """Deterministic random square system: n dense quadratic equations in n variables.

    Every admissible monomial of degree <= 2 (squarefree in boolean mode)
    gets a uniform coefficient; zero draws are redone.  With
    ``field_equations`` the system is emitted in the ordinary ring with
    x_i^2 - x_i appended, for cross-checking the quotient arithmetic.
    """
    if n < 1:
        raise ValueError("need at least one variable")
    rng = random.Random(seed)
    names = [f"x{i + 1}" for i in range(n)]
    gen_ring = Ring(names, p, boolean=boolean)
    monos = _quadratic_monomials(gen_ring)
    polys = []
    for _ in range(n):
        while True:
            pairs = [(m, rng.randrange(p)) for m in monos]
            f = gen_ring.poly(pairs)
            if not f.is_zero:
                polys.append(f)
                break
    if not field_equations:
        return System(gen_ring, polys)
    plain = Ring(names, p, boolean=False)
    lifted = [plain.poly([(plain.mono(m), c) for m, c in f.terms]) for f in polys]
    for i in range(n):
        sq = [0] * n
        sq[i] = 2
        lifted.append(plain.poly([(plain.mono(sq), 1), (plain.variables[i], -1)]))
    return System(plain, lifted)
