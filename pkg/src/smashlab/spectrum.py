"""Prime spectra of valuation domains as totally ordered chains with flags.

A spectrum is an ascending chain of slots; each slot is a single prime or a
countable strictly monotone omega-family of primes squeezed between its
neighbours.  Every slot carries an idempotency flag (family members share the
family's flag).  The zero prime sits at the bottom and is always idempotent,
the maximal ideal at the top.

Spectra either come from a value group (primes correspond to convex subgroups
in reverse inclusion; a prime is idempotent exactly when the corresponding
ordered quotient has no least positive element) or are abstract flag chains.
Abstract spectra are validated only against the structural constraints a
valuation domain forces: the supremum of an ascending family of primes must
exist in the chain and be idempotent (the union of a chain of primes without
maximum is an idempotent ideal), and a descending family needs the single
prime below it as its intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    InfiniteSpectrum,
    InvalidFlags,
    InvalidSpectrum,
    NotGroupRealized,
    UnknownPrime,
)
from .groups import ConvexRef, Group

SINGLE = "single"
OMEGA_DESC = "omega_desc"  # members descend as the index grows (toward the slot below)
OMEGA_ASC = "omega_asc"  # members ascend as the index grows (toward the slot above)


@dataclass(frozen=True)
class SpectrumSlot:
    kind: str
    idempotent: bool


@dataclass(frozen=True)
class PrimeRef:
    """A prime of the spectrum: a slot index plus a member index for families."""

    slot: int
    member: Optional[int] = None

    def key(self):
        if self.member is None:
            return (self.slot, 0)
        return (self.slot, self.member)


@dataclass(frozen=True)
class AdmissibleInterval:
    """A pair of primes [lower, upper] with the lower endpoint idempotent."""

    lower: PrimeRef
    upper: PrimeRef


class ValuationSpectrum:
    """Ascending chain of primes with idempotency flags."""

    def __init__(self, slots, group=None, convex_of_slot=None):
        self.slots = tuple(slots)
        self.group = group
        self._convex_of_slot = tuple(convex_of_slot) if convex_of_slot else None
        self._validate()

    def _validate(self):
        if not self.slots:
            raise InvalidSpectrum("a spectrum needs at least the zero prime")
        first, last = self.slots[0], self.slots[-1]
        if first.kind != SINGLE or not first.idempotent:
            raise InvalidSpectrum("the zero prime must be a single idempotent slot")
        if last.kind != SINGLE:
            raise InvalidSpectrum("the maximal ideal must be a single slot")
        for i, slot in enumerate(self.slots):
            if slot.kind == OMEGA_ASC:
                above = self.slots[i + 1] if i + 1 < len(self.slots) else None
                if above is None or above.kind != SINGLE or not above.idempotent:
                    raise InvalidSpectrum(
                        "an ascending family needs an idempotent single prime "
                        "directly above it (its union has no maximal element)"
                    )
            if slot.kind == OMEGA_DESC:
                below = self.slots[i - 1] if i > 0 else None
                if below is None or below.kind != SINGLE:
                    raise InvalidSpectrum(
                        "a descending family needs a single prime directly "
                        "below it (its intersection)"
                    )

    # identity -------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, ValuationSpectrum) and self.slots == other.slots

    def __hash__(self):
        return hash(self.slots)

    def __repr__(self):
        return "ValuationSpectrum(%s)" % render_spectrum(self)

    # structure ------------------------------------------------------------

    def is_finite(self):
        return all(s.kind == SINGLE for s in self.slots)

    def require_finite(self):
        if not self.is_finite():
            raise InfiniteSpectrum("operation needs a finite spectrum")

    def zero_prime(self):
        return PrimeRef(0)

    def top_prime(self):
        return PrimeRef(len(self.slots) - 1)

    def check_ref(self, ref):
        if not isinstance(ref, PrimeRef) or not (0 <= ref.slot < len(self.slots)):
            raise UnknownPrime("no prime %r" % (ref,))
        slot = self.slots[ref.slot]
        if slot.kind == SINGLE:
            if ref.member is not None:
                raise UnknownPrime("slot %d is a single prime" % ref.slot)
        elif ref.member is None or ref.member < 1:
            raise UnknownPrime("family slot %d needs a member index >= 1" % ref.slot)
        return ref

    def key(self, ref):
        """Total-order key of a prime; family members interleave correctly."""
        self.check_ref(ref)
        slot = self.slots[ref.slot]
        if slot.kind == SINGLE:
            return (ref.slot, 0)
        if slot.kind == OMEGA_DESC:
            return (ref.slot, -ref.member)
        return (ref.slot, ref.member)

    def leq(self, a, b):
        return self.key(a) <= self.key(b)

    def lt(self, a, b):
        return self.key(a) < self.key(b)

    def is_idempotent(self, ref):
        self.check_ref(ref)
        return self.slots[ref.slot].idempotent

    def primes(self):
        self.require_finite()
        return [PrimeRef(i) for i in range(len(self.slots))]

    # naming ---------------------------------------------------------------

    def prime_name(self, ref):
        self.check_ref(ref)
        if self.slots[ref.slot].kind == SINGLE:
            return "p%d" % ref.slot
        return "f%d_%d" % (ref.slot, ref.member)

    def slot_name(self, slot):
        if self.slots[slot].kind == SINGLE:
            return "p%d" % slot
        return "f%d" % slot

    def parse_prime_name(self, name):
        try:
            if name.startswith("p"):
                ref = PrimeRef(int(name[1:]))
            elif name.startswith("f") and "_" in name:
                s, n = name[1:].split("_", 1)
                ref = PrimeRef(int(s), int(n))
            else:
                raise ValueError
        except ValueError:
            raise UnknownPrime("bad prime name %r" % name)
        return self.check_ref(ref)

    # group realization ----------------------------------------------------

    def convex_ref(self, ref) -> ConvexRef:
        if self.group is None or self._convex_of_slot is None:
            raise NotGroupRealized("spectrum was not built from a value group")
        self.check_ref(ref)
        base = self._convex_of_slot[ref.slot]
        if self.slots[ref.slot].kind == SINGLE:
            return base
        return ConvexRef(base.slot, ref.member)


def spectrum_from_group(group: Group) -> ValuationSpectrum:
    """Primes indexed by convex subgroups in reverse inclusion.

    The flag of the prime at a convex subgroup H is the negation of the
    least-positive-element test for the ordered quotient G/H; the zero prime
    (H = G, trivial quotient) comes out idempotent automatically.
    """
    chain = group.chain
    slots = []
    convex = []
    last = len(chain.slots) - 1
    for pos in range(last, -1, -1):
        cref = ConvexRef(pos)
        if chain.is_family(pos):
            # ascending convex family reverses into a descending prime family
            flag = not group.has_least_positive_mod(ConvexRef(pos, 1))
            slots.append(SpectrumSlot(OMEGA_DESC, flag))
            convex.append(ConvexRef(pos))
        else:
            flag = not group.has_least_positive_mod(cref)
            if pos == last:
                flag = True  # zero prime
            slots.append(SpectrumSlot(SINGLE, flag))
            convex.append(cref)
    return ValuationSpectrum(slots, group=group, convex_of_slot=convex)


def spectrum_from_flags(flags) -> ValuationSpectrum:
    """Abstract finite chain with the given idempotency flags, bottom first."""
    flags = list(flags)
    if not flags:
        raise InvalidFlags("need at least one prime")
    if not flags[0]:
        raise InvalidFlags("the zero ideal is idempotent")
    return ValuationSpectrum([SpectrumSlot(SINGLE, bool(f)) for f in flags])


def spectrum_from_slots(slots) -> ValuationSpectrum:
    """Abstract spectrum with explicit (kind, idempotent) slots."""
    return ValuationSpectrum([SpectrumSlot(k, bool(f)) for k, f in slots])


def admissible_intervals(spec: ValuationSpectrum):
    """All pairs [i, p] with i idempotent and i <= p, sorted by (lower, upper)."""
    spec.require_finite()
    out = []
    n = len(spec.slots)
    for i in range(n):
        if not spec.slots[i].idempotent:
            continue
        for p in range(i, n):
            out.append(AdmissibleInterval(PrimeRef(i), PrimeRef(p)))
    return out


def ispec(spec: ValuationSpectrum):
    """The sub-chain of idempotent primes; whole families appear as one entry."""
    out = []
    for i, slot in enumerate(spec.slots):
        if not slot.idempotent:
            continue
        if slot.kind == SINGLE:
            out.append(PrimeRef(i))
        else:
            out.append(("family", i))
    return out


# ---------------------------------------------------------------------------
# text form: `[i,-,desc(i),i]` bottom-to-top


def render_spectrum(spec: ValuationSpectrum) -> str:
    toks = []
    for slot in spec.slots:
        flag = "i" if slot.idempotent else "-"
        if slot.kind == SINGLE:
            toks.append(flag)
        elif slot.kind == OMEGA_DESC:
            toks.append("desc(%s)" % flag)
        else:
            toks.append("asc(%s)" % flag)
    return "[%s]" % ",".join(toks)


def parse_spectrum(text) -> ValuationSpectrum:
    from .scanning import TextCursor

    cur = TextCursor(text)
    cur.expect("[")
    slots = []
    while True:
        if cur.eat("-"):
            slots.append((SINGLE, False))
        else:
            name = cur.match_name()
            if name == "i":
                slots.append((SINGLE, True))
            elif name in ("asc", "desc"):
                cur.expect("(")
                if cur.eat("-"):
                    flag = False
                elif cur.match_name() == "i":
                    flag = True
                else:
                    raise cur.error("expected a flag token 'i' or '-'")
                cur.expect(")")
                slots.append((OMEGA_ASC if name == "asc" else OMEGA_DESC, flag))
            else:
                raise cur.error("unknown flag token %r" % name)
        if not cur.eat(","):
            break
    cur.expect("]")
    cur.expect_end()
    return spectrum_from_slots(slots)


def describe_spectrum(spec: ValuationSpectrum):
    """Human-readable lines, bottom-to-top, one per slot."""
    lines = []
    for i, slot in enumerate(spec.slots):
        flag = "idempotent" if slot.idempotent else "not idempotent"
        if slot.kind == SINGLE:
            lines.append("%s: %s" % (spec.slot_name(i), flag))
        elif slot.kind == OMEGA_DESC:
            lines.append("%s_j (descending family): %s" % (spec.slot_name(i), flag))
        else:
            lines.append("%s_j (ascending family): %s" % (spec.slot_name(i), flag))
    return lines
