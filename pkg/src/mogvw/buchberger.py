"""Independent Buchberger oracle and Groebner-basis verification.

This module deliberately shares only the algebra core with the engines: a
verification oracle must not inherit engine bugs.  The pair strategy is the
normal one (minimal lcm degree) and the classical coprime/chain criteria can
be switched off for cross-checking.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .monomials import Monomial
from .poly import Polynomial
from .ring import Ring


def normal_form(f: Polynomial, G, ring: Ring) -> Polynomial:
    """Remainder of f under full multivariate division by G.

    No monomial of the result is divisible by any lead of G; the reducer is
    always the first match in descending lead order, so the result is
    deterministic in the set G.
    """
    reducers = sorted((g for g in G if not g.is_zero),
                      key=lambda g: g.lm().sort_key(), reverse=True)
    if not reducers:
        return f
    inv = ring.field.inv
    one = ring.mono_one
    out: list[tuple[Monomial, int]] = []
    work = f
    while not work.is_zero:
        lead, lc = work.terms[0]
        for g in reducers:
            if g.lm().divides(lead):
                work = ring.combine(1, one, work, lc * inv(g.lc()), lead.div(g.lm()), g)
                break
        else:
            out.append((lead, lc))
            work = Polynomial(work.terms[1:])
    return Polynomial(out)


def s_polynomial(f: Polynomial, g: Polynomial, ring: Ring) -> Polynomial:
    lcm = f.lm().lcm(g.lm())
    return ring.combine(g.lc(), lcm.div(f.lm()), f, f.lc(), lcm.div(g.lm()), g)


@dataclass(frozen=True)
class OracleGB:
    """Reduced Groebner basis: monic, autoreduced, descending lead order."""

    polys: tuple[Polynomial, ...]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def buchberger(system, ring: Ring, use_criteria: bool = True) -> OracleGB:
    """Reduced Groebner basis by S-polynomial completion.

    ``use_criteria`` enables Buchberger's product criterion and the chain
    criterion (skip (i,j) when some lm_k divides lcm(i,j) and neither (i,k)
    nor (j,k) is still pending).  In quotient (boolean) mode the pair queue
    also carries one field pair per basis element and lead variable: the
    S-polynomial with x_i^2 - x_i, computed in the quotient as x_i*g - g.
    These are never skipped; they carry genuine ideal content.
    """
    G = [ring.monic(f) for f in system if not f.is_zero]
    if not G:
        return OracleGB(())

    pending: set[tuple[int, int]] = set()
    heap: list = []

    def push_pairs(j: int) -> None:
        gj_lm = G[j].lm()
        for i in range(j):
            lcm = G[i].lm().lcm(gj_lm)
            heapq.heappush(heap, (lcm.degree, lcm.sort_key(), 0, i, j))
            pending.add((i, j))
        if ring.boolean:
            for v, e in enumerate(gj_lm):
                if e:
                    heapq.heappush(heap, (gj_lm.degree + 1, gj_lm.sort_key(), 1, j, v))

    for j in range(len(G)):
        push_pairs(j)

    while heap:
        _, _, kind, i, j = heapq.heappop(heap)
        if kind == 1:
            g = G[i]
            s = ring.combine(1, ring.variables[j], g, 1, ring.mono_one, g)
        else:
            pending.discard((i, j))
            lm_i, lm_j = G[i].lm(), G[j].lm()
            lcm = lm_i.lcm(lm_j)
            if use_criteria:
                if lcm.degree == lm_i.degree + lm_j.degree:
                    continue  # coprime leads: S-polynomial reduces to zero
                if _chain_skip(G, pending, i, j, lcm):
                    continue
            s = s_polynomial(G[i], G[j], ring)
        r = normal_form(s, G, ring)
        if not r.is_zero:
            if r.lm().is_one:
                return OracleGB((ring.monic(r),))
            G.append(ring.monic(r))
            push_pairs(len(G) - 1)

    return OracleGB(tuple(_autoreduce(G, ring)))


def _chain_skip(G, pending, i: int, j: int, lcm: Monomial) -> bool:
    for k in range(len(G)):
        if k == i or k == j:
            continue
        if G[k].lm().divides(lcm):
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                return True
    return False


def _autoreduce(G, ring: Ring):
    """Minimalize by leads, then tail-reduce each survivor against the rest."""
    minimal: list[Polynomial] = []
    for f in sorted(G, key=lambda g: g.lm().sort_key()):
        if not any(h.lm().divides(f.lm()) for h in minimal):
            minimal.append(f)
    reduced = []
    for idx, f in enumerate(minimal):
        rest = minimal[:idx] + minimal[idx + 1 :]
        reduced.append(ring.monic(normal_form(f, rest, ring)))
    reduced.sort(key=lambda g: g.lm().sort_key(), reverse=True)
    return reduced


def minimal_generators(monos) -> set[Monomial]:
    """Minimal generating set of the monomial ideal spanned by ``monos``."""
    out: list[Monomial] = []
    for m in sorted(set(monos), key=Monomial.sort_key):
        if not any(g.divides(m) for g in out):
            out.append(m)
    return set(out)


def verify_gb(candidate, system, ring: Ring, oracle: OracleGB | None = None) -> dict:
    """Four-way report: candidate self-consistency, two-way ideal membership
    against the Buchberger oracle, and lead-term ideal equality.

    Failures are itemized in the report, never raised.
    """
    cand = [ring.monic(f) for f in candidate if not f.is_zero]
    failures: list[str] = []

    spolys_ok = True
    if not cand:
        spolys_ok = bool(not [f for f in system if not f.is_zero])
        if not spolys_ok:
            failures.append("candidate basis is empty")
    for i in range(len(cand)):
        for j in range(i + 1, len(cand)):
            r = normal_form(s_polynomial(cand[i], cand[j], ring), cand, ring)
            if not r.is_zero:
                spolys_ok = False
                failures.append(f"s-polynomial of candidates {i},{j} does not reduce to zero")
    if ring.boolean:
        # quotient mode: the S-polynomials with the field relations x_i^2 - x_i
        for i, g in enumerate(cand):
            for v, e in enumerate(g.lm()):
                if not e:
                    continue
                s = ring.combine(1, ring.variables[v], g, 1, ring.mono_one, g)
                if not normal_form(s, cand, ring).is_zero:
                    spolys_ok = False
                    failures.append(
                        f"field s-polynomial of candidate {i} and {ring.names[v]} "
                        "does not reduce to zero"
                    )

    inputs_ok = True
    for k, f in enumerate(system):
        if f.is_zero:
            continue
        if not normal_form(f, cand, ring).is_zero:
            inputs_ok = False
            failures.append(f"input {k} does not reduce to zero modulo the candidate")

    if oracle is None:
        oracle = buchberger(system, ring)
    members_ok = True
    for k, g in enumerate(cand):
        if not normal_form(g, list(oracle), ring).is_zero:
            members_ok = False
            failures.append(f"candidate {k} is not in the ideal")

    cand_leads = minimal_generators(g.lm() for g in cand)
    oracle_leads = minimal_generators(g.lm() for g in oracle)
    leads_ok = cand_leads == oracle_leads
    if not leads_ok:
        failures.append("lead-term ideals differ")

    return {
        "spolys_reduce_to_zero": spolys_ok,
        "inputs_in_candidate_ideal": inputs_ok,
        "candidate_in_ideal": members_ok,
        "lead_ideals_match": leads_ok,
        "ok": spolys_ok and inputs_ok and members_ok and leads_ok,
        "failures": failures,
    }
