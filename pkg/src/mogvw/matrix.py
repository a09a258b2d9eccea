"""Batch engine: lift a whole degree at once and eliminate with linear algebra.

Each round lifts every unlifted entry of minimal degree, collects the
multiples that need reduction, closes the set symbolically with reducer
multiples from the basis, and runs a one-sided elimination in which a row may
only ever be combined with strictly smaller-signature rows.  Rows over GF(2)
are packed into Python ints (one bit per column); odd-prime rows are dense
residue lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .labeled import BasisState, CriteriaOptions, LabeledMonomial
from .monomials import Monomial, Signature, sig_cmp, sig_key
from .poly import Polynomial, preprocess_inputs
from .ring import Ring

Row = tuple[Signature, Polynomial]


@dataclass
class MatrixOptions(CriteriaOptions):
    # Equal-signature dedupe at sort time stands in for the rewritten check;
    # setting rewritten=True adds the full cover scan during lift as well.
    rewritten: bool = False
    record_syzygies: bool = False
    record_matrix_stats: bool = True
    paranoid: bool = False


@dataclass
class MatrixResult:
    basis: list[Polynomial]
    state: BasisState
    matrix_stats: list[dict] = field(default_factory=list)

    @property
    def stats(self):
        return self.state.stats


def collect_todo(state: BasisState, mindeg: int) -> list[LabeledMonomial]:
    """All unlifted entries of exactly the minimal degree, marked lifted."""
    todo = [e for e in state.entries.values() if not e.lifted and e.mono.degree == mindeg]
    todo.sort(key=lambda e: (sig_key(e.signature(state.ring)), e.serial))
    for e in todo:
        e.lifted = True
    return todo


def _lift_rejected(state: BasisState, opts: MatrixOptions, mono: Monomial,
                   sig: Signature, own_lm: Monomial, other_lm: Monomial) -> bool:
    if opts.lcm and state.lcm_rejected(mono, own_lm, other_lm):
        state.stats.rejections_lcm += 1
        return True
    if opts.syzygy and state.syzygy_check(sig):
        state.stats.rejections_syzygy += 1
        return True
    if opts.principal and state.principal_syzygy_check(sig):
        state.stats.rejections_principal += 1
        return True
    if opts.rewritten and state.rewritten_check(mono, sig):
        state.stats.rejections_rewritten += 1
        return True
    return False


def lift_fn(todo, state: BasisState, opts: MatrixOptions,
            seen: set | None = None) -> list[Row]:
    """Lift each entry by every variable; collisions feed the reduction set.

    The higher-signature multiple of a surviving collision enters H together
    with the resident's multiple; a smaller-signature newcomer replaces the
    resident in G first and the evictee is gated the same way.
    """
    ring = state.ring
    H: list[Row] = []
    seen = set() if seen is None else seen

    def add_pair(sig_a: Signature, t_a: Monomial, e_a: LabeledMonomial,
                 sig_b: Signature, t_b: Monomial, e_b: LabeledMonomial) -> None:
        for sig, t, e in ((sig_a, t_a, e_a), (sig_b, t_b, e_b)):
            poly = ring.mul_mono(e.poly, t)
            key = (sig, poly.lm())
            if key not in seen:
                seen.add(key)
                H.append((sig, poly))

    for entry in todo:
        for i in range(ring.n):
            lifted_mono = ring.mono_mul_var(entry.mono, i)
            if lifted_mono == entry.mono:
                continue  # quotient mode no-op
            state.stats.lifts += 1
            resident = state.entries.get(lifted_mono)
            if resident is None:
                state.insert_or_replace(
                    state.new_entry(lifted_mono, entry.sig_lead, entry.poly)
                )
                continue
            t_f = lifted_mono.div(entry.poly.lm())
            t_g = lifted_mono.div(resident.poly.lm())
            cand_sig = Signature(entry.sig_lead.index,
                                 ring.mono_mul(t_f, entry.sig_lead.mono))
            res_sig = resident.signature(ring)
            c = sig_cmp(cand_sig, res_sig)
            if c > 0:
                if not _lift_rejected(state, opts, lifted_mono, cand_sig,
                                      entry.poly.lm(), resident.poly.lm()):
                    add_pair(cand_sig, t_f, entry, res_sig, t_g, resident)
            elif c < 0:
                state.insert_or_replace(
                    state.new_entry(lifted_mono, entry.sig_lead, entry.poly)
                )
                if not _lift_rejected(state, opts, lifted_mono, res_sig,
                                      resident.poly.lm(), entry.poly.lm()):
                    add_pair(cand_sig, t_f, entry, res_sig, t_g, resident)
            else:
                state.stats.collisions_equal += 1
    return H


def append_fn(H: list[Row], state: BasisState, seen: set | None = None,
              extra_rows: list[Row] | None = None) -> None:
    """Symbolic closure: add the resident multiple for every tail monomial
    that is keyed in G, processing each monomial exactly once.

    Leads of the lift pairs already have their reducers in H, so they seed
    the done set; ``extra_rows`` (field-relation candidates in quotient
    mode) carry no reducer yet, so their leads are treated like tails.
    """
    ring = state.ring
    entries = state.entries
    seen = set() if seen is None else seen
    done = {poly.lm() for _, poly in H}
    if extra_rows:
        H.extend(extra_rows)
    stack: list[Monomial] = []
    for _, poly in H:
        for m, _ in poly.terms:
            if m not in done:
                done.add(m)
                stack.append(m)
    while stack:
        m = stack.pop()
        e = entries.get(m)
        if e is None:
            continue
        rpoly = ring.mul_mono(e.poly, m.div(e.poly.lm()))
        sig = e.signature(ring)
        key = (sig, m)
        if key in seen:
            continue
        seen.add(key)
        H.append((sig, rpoly))
        for mm, _ in rpoly.terms:
            if mm not in done:
                done.add(mm)
                stack.append(mm)


def dedupe_by_signature(H: list[Row]) -> list[Row]:
    """Sort ascending by signature and keep one row per signature."""
    rows = sorted(H, key=lambda r: (sig_key(r[0]), r[1].lm().sort_key()))
    out: list[Row] = []
    last = None
    for sig, poly in rows:
        if sig == last:
            continue
        last = sig
        out.append((sig, poly))
    return out


def eliminate_fn(H: list[Row], ring: Ring, stats=None, track: bool = False):
    """One-sided elimination in ascending signature order.

    Every row is repeatedly top-reduced by existing pivots, all of which have
    strictly smaller signatures; surviving rows become pivots and are
    returned, vanished rows are reported as syzygy signatures.  With
    ``track=True`` each output additionally carries its combination over the
    input rows (for invariant replay in tests).
    """
    rows = dedupe_by_signature(H)
    if not rows:
        return [], [], {"rows": 0, "cols": 0, "new_pivots": 0, "zero_rows": 0}
    columns = sorted({m for _, poly in rows for m, _ in poly.terms},
                     key=Monomial.sort_key, reverse=True)
    col_index = {m: i for i, m in enumerate(columns)}
    p = ring.p
    gf2 = p == 2 and not track

    pivots: dict[int, object] = {}
    out: list[Row] = []
    combos: list[dict[int, int]] = []
    pivot_combos: dict[int, dict[int, int]] = {}
    zero_sigs: list[Signature] = []

    if gf2:
        for sig, poly in rows:
            vec = 0
            for m, _ in poly.terms:
                vec |= 1 << col_index[m]
            while vec:
                lead = (vec & -vec).bit_length() - 1
                pv = pivots.get(lead)
                if pv is None:
                    break
                vec ^= pv
                if stats is not None:
                    stats.row_reductions += 1
            if vec:
                lead = (vec & -vec).bit_length() - 1
                pivots[lead] = vec
                terms = []
                v = vec
                while v:
                    low = v & -v
                    terms.append((columns[low.bit_length() - 1], 1))
                    v ^= low
                out.append((sig, Polynomial(terms)))
            else:
                zero_sigs.append(sig)
    else:
        inv = ring.field.inv
        ncols = len(columns)
        for ridx, (sig, poly) in enumerate(rows):
            vec = [0] * ncols
            for m, c in poly.terms:
                vec[col_index[m]] = c
            combo = {ridx: 1}
            lead = next((i for i, v in enumerate(vec) if v), None)
            while lead is not None:
                pv = pivots.get(lead)
                if pv is None:
                    break
                factor = vec[lead]  # pivot rows are monic
                vec = [(a - factor * b) % p for a, b in zip(vec, pv)]
                if track:
                    pcombo = pivot_combos[lead]
                    for k, v in pcombo.items():
                        combo[k] = (combo.get(k, 0) - factor * v) % p
                if stats is not None:
                    stats.row_reductions += 1
                lead = next((i for i, v in enumerate(vec) if v), None)
            if lead is not None:
                scale = inv(vec[lead])
                monic_vec = [(v * scale) % p for v in vec]
                pivots[lead] = monic_vec
                if track:
                    pivot_combos[lead] = {k: (v * scale) % p for k, v in combo.items()}
                    combos.append({k: v % p for k, v in combo.items() if v % p})
                out.append(
                    (sig, Polynomial([(columns[i], v) for i, v in enumerate(vec) if v]))
                )
            else:
                zero_sigs.append(sig)
                if track:
                    combos.append({k: v % p for k, v in combo.items() if v % p})

    dims = {
        "rows": len(rows),
        "cols": len(columns),
        "new_pivots": len(out),
        "zero_rows": len(zero_sigs),
    }
    if track:
        return out, zero_sigs, dims, rows, combos
    return out, zero_sigs, dims


def update_fn(P: list[Row], state: BasisState) -> None:
    """Fold eliminated rows back into G: insert new leads, keep smaller signatures."""
    ring = state.ring
    for sig, poly in P:
        entry = state.new_entry(poly.lm(), sig, ring.monic(poly))
        state.insert_or_replace(entry)


def groebner_matrix(polys, ring: Ring, options: MatrixOptions | None = None) -> MatrixResult:
    """Run the matrix engine; primitive entries of the result form a Groebner
    basis with the same lead-term ideal as the stepwise engine's output."""
    opts = options or MatrixOptions()
    if not polys:
        raise ValueError("empty input system")
    system = preprocess_inputs(polys, ring)
    state = BasisState(ring)
    matrix_stats: list[dict] = []
    if not system:
        return MatrixResult([], state, matrix_stats)

    state.num_generators = len(system)
    for i, f in enumerate(system, start=1):
        state.insert_or_replace(state.new_entry(f.lm(), Signature(i, ring.mono_one), f))

    loop = 0
    bump = -1
    while True:
        liftdeg = max(state.recompute_liftdeg(), bump)
        mindeg = state.recompute_mindeg()
        while not state.has_unit() and (
            state.pending_field or (mindeg is not None and mindeg <= liftdeg)
        ):
            loop += 1
            batch_deg = mindeg if mindeg is not None and mindeg <= liftdeg else None
            todo = collect_todo(state, batch_deg) if batch_deg is not None else []
            seen: set = set()
            H = lift_fn(todo, state, opts, seen)
            field_rows = _pending_field_rows(state)
            append_fn(H, state, seen, extra_rows=field_rows)
            if opts.paranoid:
                _check_closure(H, state)
            P, zero_sigs, dims = eliminate_fn(H, ring, state.stats)
            state.stats.eliminations += 1
            for sig in zero_sigs:
                state.stats.syzygies_discovered += 1
                state.stats.reductions_to_zero += 1
                if opts.record_syzygies and sig.index > 0:
                    state.record_syzygy(sig)
            update_fn(P, state)
            if opts.paranoid:
                state.check_no_collision()
            if opts.record_matrix_stats:
                matrix_stats.append({"loop": loop, "mindeg": batch_deg, **dims})
            liftdeg = max(state.recompute_liftdeg(), bump)
            mindeg = state.recompute_mindeg()
        if state.has_unit():
            break
        mcd = state.maxcpdeg(
            use_recorded_syzygies=opts.syzygy and bool(state.syzygy_sigs),
            use_principal=opts.principal,
        )
        if mcd > liftdeg + 1:
            bump = mcd - 1
            continue
        break
    return MatrixResult(state.basis(), state, matrix_stats)


def _pending_field_rows(state: BasisState) -> list[Row]:
    """Quotient mode: turn pending (x_i - 1)-multiples into matrix rows.

    Each row gets a fresh top-priority signature, so the one-sided
    elimination reduces it against every other row; survivors are genuinely
    new generators and are folded into G by update_fn.
    """
    ring = state.ring
    rows: list[Row] = []
    while state.pending_field:
        poly, i = state.pending_field.pop()
        h = ring.combine(1, ring.variables[i], poly, 1, ring.mono_one, poly)
        if h.is_zero:
            continue
        idx = state.add_generator()
        state.stats.field_generators += 1
        rows.append((Signature(idx, ring.mono_one), h))
    return rows


def _check_closure(H: list[Row], state: BasisState) -> None:
    """Every monomial of H is either unkeyed in G or has a reducer row in H."""
    leads = {poly.lm() for _, poly in H}
    for _, poly in H:
        for m, _ in poly.terms:
            assert m not in state.entries or m in leads
    state.stats.paranoid_checks += 1
