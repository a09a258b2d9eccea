"""Pair-at-a-time engine: lift one entry, mutual-reduce each variable multiple.

The recursion of the mutual-reduction procedure is run on an explicit LIFO
worklist: a reduction result with a strictly smaller signature displaces the
resident entry at its monomial, and the evictee goes back on the worklist.
Criteria are checked only for reducible candidates, so a smaller-signature
newcomer always replaces the resident first and the evictee is gated on its
own turn, matching the published trace.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .labeled import (
    BasisState,
    CriteriaOptions,
    LabeledMonomial,
    REPLACED,
    REJECTED_LARGER,
    pick_key,
)
from .monomials import Signature, sig_cmp
from .poly import Polynomial, preprocess_inputs
from .ring import Ring


@dataclass
class StepOptions(CriteriaOptions):
    trace: bool = False
    paranoid: bool = False


@dataclass
class StepResult:
    basis: list[Polynomial]
    state: BasisState
    trace: list[dict] = field(default_factory=list)

    @property
    def stats(self):
        return self.state.stats


def one_step_reduce(target: LabeledMonomial, reducer: LabeledMonomial, ring: Ring) -> LabeledMonomial:
    """Cancel the shared monomial against a strictly smaller-signature entry.

    Returns ``(lm(p), (t_f*lm(u), p))`` with ``p = lc(g) t_f f - lc(f) t_g g``;
    the result is primitive, or a syzygy when p vanishes, and it keeps the
    target's full signature as its stored signature lead.
    """
    if target.mono != reducer.mono or target.mono is None:
        raise ValueError("one-step reduction needs a collision")
    tsig = target.signature(ring)
    rsig = reducer.signature(ring)
    if sig_cmp(rsig, tsig) >= 0:
        raise ValueError("reducer signature must be strictly smaller")
    f, g = target.poly, reducer.poly
    t_f = target.mono.div(f.lm())
    t_g = target.mono.div(g.lm())
    p = ring.combine(g.lc(), t_f, f, f.lc(), t_g, g)
    if p.is_zero:
        return LabeledMonomial(None, tsig, Polynomial())
    return LabeledMonomial(p.lm(), tsig, p)


def reduce_full(target: LabeledMonomial, state: BasisState) -> LabeledMonomial:
    """Iterate one-step reductions until the current monomial has no strictly
    smaller-signature entry in G; the monomial strictly decreases each step."""
    ring = state.ring
    cur = target
    while not cur.poly.is_zero:
        resident = state.entries.get(cur.mono)
        if resident is None or sig_cmp(resident.signature(ring), cur.signature(ring)) >= 0:
            break
        cur = one_step_reduce(cur, resident, ring)
        state.stats.one_step_reductions += 1
    return cur


def _rejected_by(state: BasisState, opts: CriteriaOptions, cand: LabeledMonomial,
                 resident: LabeledMonomial) -> str | None:
    """First criterion that rejects a reducible candidate, or None."""
    sig = cand.signature(state.ring)
    if opts.lcm and state.lcm_rejected(cand.mono, cand.poly.lm(), resident.poly.lm()):
        state.stats.rejections_lcm += 1
        return "lcm"
    if opts.syzygy and state.syzygy_check(sig):
        state.stats.rejections_syzygy += 1
        return "syzygy"
    if opts.principal and state.principal_syzygy_check(sig):
        state.stats.rejections_principal += 1
        return "principal"
    if opts.rewritten and state.rewritten_check(cand.mono, sig):
        state.stats.rejections_rewritten += 1
        return "rewritten"
    return None


def mutual_reduce(cand: LabeledMonomial, state: BasisState, opts: StepOptions,
                  trace: list[dict] | None = None, loop: int = 0, var: int = -1) -> None:
    """Mutual-reduce a labeled monomial, worklist form of the recursive procedure."""
    ring = state.ring
    stats = state.stats
    work = [cand]
    while work:
        if len(work) > stats.max_worklist:
            stats.max_worklist = len(work)
        item = work.pop()
        stats.mutual_reductions += 1
        resident = state.entries.get(item.mono)
        reducible = (
            resident is not None
            and sig_cmp(resident.signature(ring), item.signature(ring)) < 0
        )
        if reducible:
            reason = _rejected_by(state, opts, item, resident)
            if reason is not None:
                if trace is not None:
                    trace.append(_event(ring, loop, var, f"reject_{reason}", item))
                continue
        result = reduce_full(item, state)
        if opts.paranoid and result is not item:
            stats.paranoid_checks += 1
            assert result.is_syzygy or result.is_primitive
            assert result.sig_lead == item.signature(ring)
            assert result.mono is None or result.mono < item.mono
        if result.poly.is_zero:
            stats.reductions_to_zero += 1
            stats.syzygies_discovered += 1
            if opts.record_syzygies:
                state.record_syzygy(result.sig_lead)
            if trace is not None:
                trace.append(_event(ring, loop, var, "syzygy", item, sig=result.sig_lead))
            continue
        outcome, evicted = state.insert_or_replace(result)
        if trace is not None:
            ev = _event(ring, loop, var, outcome, result)
            if evicted is not None:
                ev["evicted_sig"] = ring.format_sig(evicted.signature(ring))
            trace.append(ev)
        if outcome == REPLACED:
            work.append(evicted)
        elif opts.paranoid:
            assert outcome != REJECTED_LARGER, "irreducible result cannot lose a collision"


def pick_unlifted(state: BasisState, liftdeg: int) -> LabeledMonomial | None:
    """Smallest (degree, signature, serial) unlifted entry within the bound."""
    ring = state.ring
    best = None
    best_key = None
    for e in state.entries.values():
        if e.lifted or e.mono.degree > liftdeg:
            continue
        k = pick_key(e, ring)
        if best_key is None or k < best_key:
            best, best_key = e, k
    return best


def groebner_step(polys, ring: Ring, options: StepOptions | None = None) -> StepResult:
    """Run the stepwise engine; primitive entries of the result form a
    Groebner basis of the input ideal."""
    opts = options or StepOptions()
    if not polys:
        raise ValueError("empty input system")
    system = preprocess_inputs(polys, ring)
    trace: list[dict] | None = [] if opts.trace else None
    state = BasisState(ring)
    if not system:
        return StepResult([], state, trace or [])

    state.num_generators = len(system)
    for i, f in enumerate(system, start=1):
        state.insert_or_replace(state.new_entry(f.lm(), Signature(i, ring.mono_one), f))
    for i in range(1, len(system) + 1):
        for j in range(i + 1, len(system) + 1):
            # principal syzygy f_j e_i - f_i e_j has lead lm(f_j) e_i under POT
            state.record_syzygy(Signature(i, system[j - 1].lm()))

    loop = 0
    bump = -1
    liftdeg_high = -1
    done = False
    while not done:
        liftdeg = max(state.recompute_liftdeg(), bump)
        while True:
            _drain_field_candidates(state, opts, trace)
            if state.has_unit():
                done = True  # unit ideal: any set containing it is a basis
                break
            liftdeg = max(state.recompute_liftdeg(), bump)
            cand = pick_unlifted(state, liftdeg)
            if cand is None:
                break
            loop += 1
            liftdeg_high = max(liftdeg_high, liftdeg)
            cand.lifted = True
            if trace is not None:
                trace.append(_event(ring, loop, -1, "pick", cand))
            for i in range(ring.n):
                lifted = cand.lifted_by(i, ring)
                if lifted.mono == cand.mono:
                    continue  # quotient mode: x_i already divides the monomial
                state.stats.lifts += 1
                mutual_reduce(lifted, state, opts, trace, loop, i)
            liftdeg = max(state.recompute_liftdeg(), bump)
            if opts.paranoid:
                _boundary_checks(state, liftdeg_high)
            if trace is not None:
                trace.append({"loop": loop, "action": "state", "digest": state_digest(state)})
        if done:
            break
        mcd = state.maxcpdeg(use_recorded_syzygies=opts.syzygy, use_principal=False)
        if mcd > liftdeg + 1:
            bump = mcd - 1
            continue
        break
    return StepResult(state.basis(), state, trace or [])


def _drain_field_candidates(state: BasisState, opts: StepOptions,
                            trace: list[dict] | None) -> None:
    """Quotient mode: turn pending (x_i - 1)-multiples into fresh generators.

    Each candidate is top-reduced against the current primitive polynomials;
    a nonzero remainder carries ideal content whose lead is outside the
    current lead ideal, so it joins the generator list with a fresh (lowest
    POT priority) signature and its principal syzygy seeds are recorded.
    """
    ring = state.ring
    while state.pending_field and not state.has_unit():
        poly, i = state.pending_field.pop()
        h = ring.combine(1, ring.variables[i], poly, 1, ring.mono_one, poly)
        if h.is_zero:
            continue
        h = state.top_normal_form(h)
        if h.is_zero:
            continue
        h = ring.monic(h)
        idx = state.add_generator()
        state.stats.field_generators += 1
        entry = state.new_entry(h.lm(), Signature(idx, ring.mono_one), h)
        outcome, evicted = state.insert_or_replace(entry)
        if trace is not None:
            trace.append(_event(ring, 0, -1, f"field_{outcome}", entry))
        if outcome == REPLACED:
            mutual_reduce(evicted, state, opts, trace, 0, -1)


def _boundary_checks(state: BasisState, liftdeg_high: int) -> None:
    state.check_no_collision()
    for e in state.entries.values():
        assert e.mono.degree <= liftdeg_high + 1
    state.stats.paranoid_checks += 1


def _event(ring: Ring, loop: int, var: int, action: str, entry: LabeledMonomial,
           sig: Signature | None = None) -> dict:
    sig = sig if sig is not None else entry.signature(ring)
    ev = {
        "loop": loop,
        "action": action,
        "mono": ring.format_mono(entry.mono),
        "sig": ring.format_sig(sig),
    }
    if var >= 0:
        ev["var"] = ring.names[var]
    if not entry.poly.is_zero:
        ev["poly"] = ring.format_poly(entry.poly)
    return ev


def state_digest(state: BasisState) -> str:
    """Order-independent digest of the basis map and recorded syzygies."""
    ring = state.ring
    lines = sorted(
        f"{ring.format_mono(m)}|{ring.format_sig(e.signature(ring))}|{ring.format_poly(e.poly)}"
        for m, e in state.entries.items()
    )
    lines += sorted(
        f"S|{ring.format_sig(Signature(i, m))}"
        for i, monos in state.syzygy_sigs.items()
        for m in monos
    )
    return hashlib.sha1("\n".join(lines).encode()).hexdigest()
