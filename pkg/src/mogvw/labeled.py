"""Labeled monomials, the collision-free basis state, and the pruning criteria.

The basis is a hash map from monomials to labeled monomials: each nonzero
monomial keys at most one entry, and collisions are resolved by keeping the
entry with the smaller signature.  Signatures of zero reductions live in a
separate per-index store; the LCM, syzygy, principal-syzygy and rewritten
checks are all answered from these two structures without divisor searches
over the whole basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .monomials import Monomial, Signature, mono_cmp, sig_cmp, sig_key
from .poly import Polynomial
from .ring import Ring

INSERTED = "inserted"
REPLACED = "replaced"
REJECTED_EQUAL = "rejected_equal"
REJECTED_LARGER = "rejected_larger"


class LabeledMonomial:
    """A monomial paired with the reduced generator data ``(lm(u), f)``.

    ``sig_lead`` stores only the lead module monomial of the derivation
    vector; the tail is never needed.  ``mono`` is ``None`` exactly for
    syzygy results (zero polynomial), which never live in the basis map.
    """

    __slots__ = ("mono", "sig_lead", "poly", "lifted", "serial", "_sig")

    def __init__(self, mono: Monomial | None, sig_lead: Signature, poly: Polynomial,
                 lifted: bool = False, serial: int = -1):
        self.mono = mono
        self.sig_lead = sig_lead
        self.poly = poly
        self.lifted = lifted
        self.serial = serial
        self._sig = None

    @property
    def is_syzygy(self) -> bool:
        return self.poly.is_zero

    @property
    def is_primitive(self) -> bool:
        return not self.poly.is_zero and self.mono == self.poly.lm()

    @property
    def degree(self) -> int:
        return self.mono.degree if self.mono is not None else -1

    def signature(self, ring: Ring) -> Signature:
        """Full signature ``(mono / lm(f)) * lm(u)``; just ``lm(u)`` for syzygies."""
        s = self._sig
        if s is None:
            if self.poly.is_zero or self.mono == self.poly.lm():
                s = self.sig_lead
            else:
                t = self.mono.div(self.poly.lm())
                s = Signature(self.sig_lead.index, ring.mono_mul(t, self.sig_lead.mono))
            self._sig = s
        return s

    def lifted_by(self, i: int, ring: Ring) -> "LabeledMonomial":
        """The lift by variable i (0-based): same generator data, monomial times x_i."""
        return LabeledMonomial(ring.mono_mul_var(self.mono, i), self.sig_lead, self.poly)

    def __repr__(self):
        kind = "syz" if self.is_syzygy else ("prim" if self.is_primitive else "lm")
        return f"<{kind} {self.mono} sig={self.sig_lead} #{self.serial}>"


def signature_of(entry: LabeledMonomial, ring: Ring) -> Signature:
    return entry.signature(ring)


def lift_by_var(entry: LabeledMonomial, i: int, ring: Ring) -> LabeledMonomial:
    return entry.lifted_by(i, ring)


def resolve_collision(a: LabeledMonomial, b: LabeledMonomial, ring: Ring) -> str:
    """Which of two colliding labeled monomials survives: the smaller signature."""
    if a.mono != b.mono or a.mono is None:
        raise ValueError("entries do not collide")
    c = sig_cmp(a.signature(ring), b.signature(ring))
    if c < 0:
        return "keep_a"
    if c > 0:
        return "keep_b"
    return "equal"


@dataclass
class CriteriaOptions:
    """Toggles for the work-pruning criteria; they never change the output ideal."""

    lcm: bool = True
    syzygy: bool = True
    principal: bool = True
    rewritten: bool = True
    record_syzygies: bool = True


@dataclass
class Stats:
    """Instrumentation counters; all monotonically nondecreasing."""

    inserts: int = 0
    replacements: int = 0
    collisions_equal: int = 0
    rejected_larger: int = 0
    rejections_lcm: int = 0
    rejections_syzygy: int = 0
    rejections_principal: int = 0
    rejections_rewritten: int = 0
    syzygies_discovered: int = 0
    syzygies_recorded: int = 0
    field_candidates: int = 0
    field_generators: int = 0
    lifts: int = 0
    mutual_reductions: int = 0
    one_step_reductions: int = 0
    reductions_to_zero: int = 0
    max_worklist: int = 0
    eliminations: int = 0
    row_reductions: int = 0
    paranoid_checks: int = 0

    def to_dict(self) -> dict:
        return {
            "inserts": self.inserts,
            "replacements": self.replacements,
            "collisions_equal": self.collisions_equal,
            "rejected_larger": self.rejected_larger,
            "rejections": {
                "lcm": self.rejections_lcm,
                "syzygy": self.rejections_syzygy,
                "principal": self.rejections_principal,
                "rewritten": self.rejections_rewritten,
            },
            "syzygies_discovered": self.syzygies_discovered,
            "syzygies_recorded": self.syzygies_recorded,
            "field_candidates": self.field_candidates,
            "field_generators": self.field_generators,
            "lifts": self.lifts,
            "mutual_reductions": self.mutual_reductions,
            "one_step_reductions": self.one_step_reductions,
            "reductions_to_zero": self.reductions_to_zero,
            "max_worklist": self.max_worklist,
            "eliminations": self.eliminations,
            "row_reductions": self.row_reductions,
        }


class BasisState:
    """The set G: hash-keyed labeled monomials plus recorded syzygy signatures."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.entries: dict[Monomial, LabeledMonomial] = {}
        self.syzygy_sigs: dict[int, list[Monomial]] = {}
        self._syz_seen: set[Signature] = set()
        # Per-index rewritten data: (lm(u) monomial, lm(f)) pairs of every
        # generator pair that ever entered G.  Stale pairs stay: anything
        # covered by a removed entry is covered by the final basis too.
        self._rewrite: dict[int, list[tuple[Monomial, Monomial]]] = {}
        self._rewrite_seen: set[tuple[int, Monomial, Monomial]] = set()
        self.stats = Stats()
        self._serial = 0
        self.num_generators = 0
        self._fresh_index = 0
        # lead -> polynomial over the current primitive entries; the fast
        # membership side of every divisor question
        self.prim_leads: dict[Monomial, Polynomial] = {}
        # Quotient mode only: multiplying a polynomial by a lead-support
        # variable collapses its leading term, producing ideal content that
        # lead-respecting lifts never reach.  Such candidates are queued per
        # (polynomial, variable) when a primitive entry lands in G and are
        # drained by the engines into fresh generators.
        self.pending_field: list[tuple[Polynomial, int]] = []
        self._field_seen: set[tuple[int, Polynomial]] = set()

    # ------------------------------------------------------------------
    # construction and mutation

    def new_entry(self, mono: Monomial, sig_lead: Signature, poly: Polynomial,
                  lifted: bool = False) -> LabeledMonomial:
        entry = LabeledMonomial(mono, sig_lead, poly, lifted, self._serial)
        self._serial += 1
        return entry

    def _index_for_rewrite(self, entry: LabeledMonomial) -> None:
        key = (entry.sig_lead.index, entry.sig_lead.mono, entry.poly.lm())
        if key not in self._rewrite_seen:
            self._rewrite_seen.add(key)
            self._rewrite.setdefault(key[0], []).append((key[1], key[2]))

    def insert_or_replace(self, cand: LabeledMonomial) -> tuple[str, LabeledMonomial | None]:
        """Insert a non-syzygy labeled monomial, preserving the no-collision invariant.

        Returns the outcome and, for a replacement, the evicted entry so the
        caller can mutual-reduce it.
        """
        if cand.is_syzygy:
            raise ValueError("syzygy entries are recorded, not inserted")
        if cand.serial < 0:
            cand.serial = self._serial
            self._serial += 1
        resident = self.entries.get(cand.mono)
        if resident is None:
            self.entries[cand.mono] = cand
            self._index_for_rewrite(cand)
            if cand.is_primitive:
                self.prim_leads[cand.mono] = cand.poly
                self._queue_field_candidates(cand)
            self.stats.inserts += 1
            return INSERTED, None
        c = sig_cmp(cand.signature(self.ring), resident.signature(self.ring))
        if c == 0:
            self.stats.collisions_equal += 1
            return REJECTED_EQUAL, None
        if c > 0:
            self.stats.rejected_larger += 1
            return REJECTED_LARGER, None
        self.entries[cand.mono] = cand
        self._index_for_rewrite(cand)
        if cand.is_primitive:
            self.prim_leads[cand.mono] = cand.poly
            self._queue_field_candidates(cand)
        elif resident.is_primitive:
            del self.prim_leads[cand.mono]
        self.stats.replacements += 1
        return REPLACED, resident

    def record_syzygy(self, sig: Signature) -> None:
        if sig in self._syz_seen:
            return
        self._syz_seen.add(sig)
        self.syzygy_sigs.setdefault(sig.index, []).append(sig.mono)
        self.stats.syzygies_recorded += 1

    def add_generator(self) -> int:
        """Register a fresh generator with top POT priority.

        Indices go 0, -1, -2, ... so the new generator's signature is larger
        than every existing one: its entries are reducible by the whole
        current basis, and its multiples lose every collision they meet.
        """
        self.num_generators += 1
        idx = self._fresh_index
        self._fresh_index -= 1
        return idx

    def has_unit(self) -> bool:
        """True once the constant polynomial is in the basis (unit ideal)."""
        return self.ring.mono_one in self.prim_leads

    def _queue_field_candidates(self, entry: LabeledMonomial) -> None:
        # Only generator entries (unit signature lead: the inputs and the
        # adopted field generators) feed the queue.  Field content of any
        # derived element is a combination of monomial multiples of the
        # generators' field content, since (x_i - 1)(p * f) = p * ((x_i - 1)f).
        if not self.ring.boolean or not entry.is_primitive:
            return
        if not entry.sig_lead.mono.is_one:
            return
        poly = entry.poly
        for i, e in enumerate(poly.lm()):
            if e:
                key = (i, poly)
                if key not in self._field_seen:
                    self._field_seen.add(key)
                    self.pending_field.append((poly, i))
                    self.stats.field_candidates += 1

    def _primitive_divisor(self, m: Monomial) -> Monomial | None:
        deg = m.degree
        for lead in self.prim_leads:
            if sum(lead) <= deg and lead.divides(m):
                return lead
        return None

    def top_normal_form(self, f: Polynomial) -> Polynomial:
        """Top-reduce by the current primitive polynomials until the lead escapes.

        Works on a coefficient dict so cancelled tails never get re-sorted;
        the leading slot of the surviving part is, by construction, not in
        the primitive lead ideal.
        """
        if f.is_zero or not self.prim_leads:
            return f
        ring = self.ring
        p = ring.p
        inv = ring.field.inv
        key = Monomial.sort_key
        work = dict(f.terms)
        done: list[tuple[Monomial, int]] = []
        while work:
            lead = max(work, key=key)
            divisor = self._primitive_divisor(lead)
            if divisor is None:
                # top normal form: the lead escaped, keep the rest as is
                done.extend(work.items())
                break
            g = self.prim_leads[divisor]
            factor = (work[lead] * inv(g.lc())) % p
            for m2, c2 in ring.mul_mono(g, lead.div(divisor)).terms:
                c = (work.get(m2, 0) - factor * c2) % p
                if c:
                    work[m2] = c
                elif m2 in work:
                    del work[m2]
        done = [(m, c) for m, c in done if c]
        done.sort(key=lambda t: key(t[0]), reverse=True)
        return Polynomial(done)

    # ------------------------------------------------------------------
    # criteria

    def syzygy_check(self, sig: Signature) -> bool:
        """True iff a recorded syzygy signature divides ``sig``."""
        monos = self.syzygy_sigs.get(sig.index)
        if not monos:
            return False
        target = sig.mono
        deg = target.degree
        for m in monos:
            if m.degree <= deg and m.divides(target):
                return True
        return False

    def principal_syzygy_check(self, sig: Signature) -> bool:
        """Principal syzygy test via a single hash lookup.

        A candidate with signature ``t*e_i`` is covered by the principal
        syzygy ``g*e_i - f_i*v`` whenever the monomial ``t`` is keyed in G by
        an entry whose generator index j is larger than i (so ``e_i > e_j``
        and the syzygy's lead is ``lm(g)*e_i``, which divides ``t*e_i``).
        """
        resident = self.entries.get(sig.mono)
        return resident is not None and resident.sig_lead.index > sig.index

    def rewritten_check(self, mono: Monomial, sig: Signature) -> bool:
        """Cover test with strict inequality against every recorded generator pair."""
        bucket = self._rewrite.get(sig.index)
        if not bucket:
            return False
        target = sig.mono
        ring = self.ring
        for v_mono, g_lm in bucket:
            if v_mono.divides(target):
                implied = ring.mono_mul(target.div(v_mono), g_lm)
                if mono_cmp(implied, mono) < 0:
                    return True
        return False

    @staticmethod
    def lcm_rejected(mono: Monomial, f_lm: Monomial, g_lm: Monomial) -> bool:
        """LCM criterion core: the lifted multiple is not the J-pair itself."""
        return mono != f_lm.lcm(g_lm)

    def lcm_check(self, src: LabeledMonomial, t: Monomial) -> bool:
        """Full LCM criterion for lifting ``src`` by the cofactor ``t``.

        True iff the target monomial is keyed by a strictly smaller-signature
        entry and is a proper multiple of the J-pair of the two generators.
        """
        mono = self.ring.mono_mul(t, src.poly.lm())
        resident = self.entries.get(mono)
        if resident is None:
            return False
        lifted_sig = Signature(
            src.sig_lead.index, self.ring.mono_mul(t, src.sig_lead.mono)
        )
        if sig_cmp(lifted_sig, resident.signature(self.ring)) <= 0:
            return False
        return self.lcm_rejected(mono, src.poly.lm(), resident.poly.lm())

    # ------------------------------------------------------------------
    # degree bookkeeping

    def recompute_liftdeg(self) -> int:
        """Max degree over primitive entries; -1 when there are none."""
        best = -1
        for m in self.prim_leads:
            d = sum(m)
            if d > best:
                best = d
        return best

    def recompute_mindeg(self) -> int | None:
        """Min degree over unlifted entries; None when everything is lifted."""
        best = None
        for e in self.entries.values():
            if not e.lifted:
                d = e.mono.degree
                if best is None or d < best:
                    best = d
        return best

    def primitives(self) -> list[LabeledMonomial]:
        prims = [e for e in self.entries.values() if e.is_primitive]
        prims.sort(key=lambda e: e.mono.sort_key(), reverse=True)
        return prims

    def maxcpdeg(self, *, use_recorded_syzygies: bool = True,
                 use_principal: bool = False) -> int:
        """Max degree of the lcm over primitive pairs that still carry a J-pair.

        Pairs whose J-pair does not exist (equal signatures) or is already
        covered via the enabled syzygy filters are skipped: such pairs can
        never force further lifting.  Returns 0 when no pair survives.
        """
        ring = self.ring
        prims = self.primitives()
        best = 0
        for i in range(len(prims)):
            ei = prims[i]
            fi_lm = ei.poly.lm()
            for j in range(i + 1, len(prims)):
                ej = prims[j]
                fj_lm = ej.poly.lm()
                lcm = fi_lm.lcm(fj_lm)
                d = lcm.degree
                if d <= best:
                    continue
                si = Signature(ei.sig_lead.index,
                               ring.mono_mul(lcm.div(fi_lm), ei.sig_lead.mono))
                sj = Signature(ej.sig_lead.index,
                               ring.mono_mul(lcm.div(fj_lm), ej.sig_lead.mono))
                c = sig_cmp(si, sj)
                if c == 0:
                    continue
                jsig = si if c > 0 else sj
                if use_recorded_syzygies and self.syzygy_check(jsig):
                    continue
                if use_principal and self.principal_syzygy_check(jsig):
                    continue
                best = d
        return best

    # ------------------------------------------------------------------
    # output and validation

    def basis(self) -> list[Polynomial]:
        """Monic primitive polynomials in descending lead order.

        A unit ideal collapses to the single constant polynomial.
        """
        unit = self.prim_leads.get(self.ring.mono_one)
        if unit is not None:
            return [self.ring.monic(unit)]
        return [self.ring.monic(e.poly) for e in self.primitives()]

    def check_entry(self, e: LabeledMonomial) -> None:
        assert not e.poly.is_zero and e.mono is not None
        assert e.poly.lm().divides(e.mono), "lm(f) must divide the labeled monomial"
        for m, c in e.poly.terms:
            assert 0 < c < self.ring.p

    def check_no_collision(self) -> None:
        for mono, e in self.entries.items():
            assert e.mono == mono
            self.check_entry(e)
        prim = {m for m, e in self.entries.items() if e.is_primitive}
        assert prim == set(self.prim_leads)


def pick_key(entry: LabeledMonomial, ring: Ring):
    """Deterministic selection key: (degree, signature, creation serial)."""
    return (entry.mono.degree, sig_key(entry.signature(ring)), entry.serial)
