"""Classification of smashing localizations over a valuation spectrum.

A localization is classified by a chain of pairwise strictly separated
admissible intervals ``[j, q]`` of the prime spectrum (lower endpoints
idempotent); consecutive intervals must satisfy ``q`` strictly below ``j'``.
The empty chain is a first-class value and classifies the zero ring.

For finite spectra only admissibility and separation matter.  When an
omega-family of degenerate intervals ``[i_j, i_j]`` is present, two closure
conditions become nontrivial:

* (C1) a descending family accumulates downward onto the intersection of its
  members, so the chain must contain an interval ending exactly at that
  intersection prime;
* (C2) an ascending family accumulates upward onto the union of its members
  (an idempotent prime), so the chain must contain an interval starting
  exactly there.

Condition (C3) -- between any two items some adjacent pair exists -- holds
automatically for every chain expressible in this item language, because the
finitely many items and per-member family intervals are discretely
interleaved; the violation kind is kept for completeness.

Flat (equivalently compactly generated) localizations are the empty chain and
the single intervals ``[0, p]``; they biject with the Thomason up-sets of the
spectrum.  The Telescope Conjecture holds exactly when no nonzero prime is
idempotent, which collapses the classification onto the flat chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InfiniteSpectrum, InvalidChain, NotFlat, UnknownPrime
from .scanning import TextCursor
from .spectrum import (
    OMEGA_ASC,
    OMEGA_DESC,
    SINGLE,
    AdmissibleInterval,
    PrimeRef,
    ValuationSpectrum,
    admissible_intervals,
)

_NEG_INF = float("-inf")
_POS_INF = float("inf")


@dataclass(frozen=True)
class IntervalItem:
    lower: PrimeRef
    upper: PrimeRef


@dataclass(frozen=True)
class FamilyItem:
    """The degenerate intervals [i_j, i_j] over every member of a family slot."""

    slot: int


@dataclass(frozen=True)
class IntervalChain:
    items: tuple

    def is_empty(self):
        return not self.items

    def has_family(self):
        return any(isinstance(it, FamilyItem) for it in self.items)


@dataclass(frozen=True)
class Violation:
    kind: str  # Order | NotAdmissible | C1 | C2 | C3
    detail: str

    ok = False


@dataclass(frozen=True)
class Valid:
    ok = True


VALID = Valid()


def _check_item(spec, item):
    if isinstance(item, IntervalItem):
        spec.check_ref(item.lower)
        spec.check_ref(item.upper)
    elif isinstance(item, FamilyItem):
        if not (0 <= item.slot < len(spec.slots)) or spec.slots[item.slot].kind == SINGLE:
            raise UnknownPrime("slot %d is not an omega-family" % item.slot)
    else:
        raise UnknownPrime("unknown chain item %r" % (item,))


def _item_sort_key(spec, item):
    if isinstance(item, IntervalItem):
        return spec.key(item.lower)
    if spec.slots[item.slot].kind == OMEGA_DESC:
        return (item.slot, _NEG_INF)
    return (item.slot, 1)


def _sup_key(spec, item):
    """Least upper bound of the item's upper endpoints; attained unless asc family."""
    if isinstance(item, IntervalItem):
        return spec.key(item.upper)
    if spec.slots[item.slot].kind == OMEGA_DESC:
        return (item.slot, -1)
    return (item.slot, _POS_INF)


def _inf_key(spec, item):
    if isinstance(item, IntervalItem):
        return spec.key(item.lower)
    if spec.slots[item.slot].kind == OMEGA_DESC:
        return (item.slot, _NEG_INF)
    return (item.slot, 1)


def chain_of(spec, items) -> IntervalChain:
    """Canonical chain value: items sorted along the spectrum."""
    items = list(items)
    for it in items:
        _check_item(spec, it)
    items.sort(key=lambda it: _item_sort_key(spec, it))
    return IntervalChain(tuple(items))


def _describe_item(spec, item):
    if isinstance(item, FamilyItem):
        name = spec.slot_name(item.slot)
        return "[%s_j,%s_j]*" % (name, name)
    return "[%s,%s]" % (spec.prime_name(item.lower), spec.prime_name(item.upper))


def validate_chain(spec: ValuationSpectrum, chain: IntervalChain):
    """Admissibility, strict separation and the closure conditions (C1)-(C2)."""
    items = list(chain.items)
    for it in items:
        _check_item(spec, it)
    # admissibility
    for it in items:
        if isinstance(it, IntervalItem):
            if not spec.leq(it.lower, it.upper):
                return Violation("NotAdmissible", "%s is not an interval" % _describe_item(spec, it))
            if not spec.is_idempotent(it.lower):
                return Violation(
                    "NotAdmissible",
                    "lower endpoint %s is not idempotent" % spec.prime_name(it.lower),
                )
        else:
            if not spec.slots[it.slot].idempotent:
                return Violation(
                    "NotAdmissible",
                    "family %s is not idempotent" % spec.slot_name(it.slot),
                )
    # strict separation of consecutive items
    items.sort(key=lambda it: _item_sort_key(spec, it))
    for a, b in zip(items, items[1:]):
        if not _sup_key(spec, a) < _inf_key(spec, b):
            return Violation(
                "Order",
                "%s and %s are not strictly separated"
                % (_describe_item(spec, a), _describe_item(spec, b)),
            )
    # closure conditions for omega-families
    for it in items:
        if not isinstance(it, FamilyItem):
            continue
        if spec.slots[it.slot].kind == OMEGA_DESC:
            cap = PrimeRef(it.slot - 1)
            if not any(
                isinstance(o, IntervalItem) and o.upper == cap for o in items
            ):
                return Violation(
                    "C1",
                    "descending family %s has no interval ending at its "
                    "intersection %s" % (spec.slot_name(it.slot), spec.prime_name(cap)),
                )
        else:
            cap = PrimeRef(it.slot + 1)
            if not any(
                isinstance(o, IntervalItem) and o.lower == cap for o in items
            ):
                return Violation(
                    "C2",
                    "ascending family %s has no interval starting at its "
                    "union %s" % (spec.slot_name(it.slot), spec.prime_name(cap)),
                )
    # (C3) holds structurally for this item language: the sorted items are
    # finitely many and families are internally discrete.
    return VALID


def require_valid(spec, chain):
    res = validate_chain(spec, chain)
    if not res.ok:
        raise InvalidChain("%s: %s" % (res.kind, res.detail))


def enumerate_smashing(spec: ValuationSpectrum):
    """All valid chains of a finite spectrum, in canonical lexicographic order."""
    spec.require_finite()
    ivs = admissible_intervals(spec)
    out = [IntervalChain(())]

    def extensions(prefix, last_upper_slot):
        for iv in ivs:
            if iv.lower.slot > last_upper_slot:
                item = IntervalItem(iv.lower, iv.upper)
                nxt = prefix + (item,)
                out.append(IntervalChain(nxt))
                extensions(nxt, iv.upper.slot)

    extensions((), -1)
    return out


def is_flat(spec, chain) -> bool:
    """Flat (= compactly generated) chains: empty, or one interval from 0."""
    require_valid(spec, chain)
    if chain.is_empty():
        return True
    if len(chain.items) != 1 or not isinstance(chain.items[0], IntervalItem):
        return False
    return chain.items[0].lower == spec.zero_prime()


is_compactly_generated = is_flat


@dataclass(frozen=True)
class HomEpiDescriptor:
    """Classifying data of one localization: ring components and flags."""

    components: tuple  # ("interval", lower, upper) or ("family", slot), ascending
    kernel: Optional[PrimeRef]  # lower prime of the minimal interval; None for S = 0
    zero_ring: bool
    is_flat: bool
    is_compactly_generated: bool
    has_family: bool


def classify_chain(spec, chain) -> HomEpiDescriptor:
    require_valid(spec, chain)
    if chain.is_empty():
        return HomEpiDescriptor((), None, True, True, True, False)
    items = sorted(chain.items, key=lambda it: _item_sort_key(spec, it))
    components = []
    for it in items:
        if isinstance(it, IntervalItem):
            components.append(("interval", it.lower, it.upper))
        else:
            components.append(("family", it.slot))
    first = items[0]
    if isinstance(first, IntervalItem):
        kernel = first.lower
    elif spec.slots[first.slot].kind == OMEGA_ASC:
        kernel = PrimeRef(first.slot, 1)
    else:  # a descending family is capped from below, so it is never minimal
        kernel = PrimeRef(first.slot - 1)
    flat = is_flat(spec, chain)
    return HomEpiDescriptor(
        tuple(components), kernel, False, flat, flat, chain.has_family()
    )


def finite_stage(spec, chain, k):
    """The k-th finite approximation of a family chain.

    Each descending family together with its capping interval collapses to
    one block interval from the cap's lower endpoint up to member k+1, keeping
    members 1..k as individual components; dually for ascending families.
    Finite chains are their own stages.
    """
    require_valid(spec, chain)
    items = sorted(chain.items, key=lambda it: _item_sort_key(spec, it))
    out = []
    i = 0
    while i < len(items):
        it = items[i]
        if isinstance(it, IntervalItem):
            nxt = items[i + 1] if i + 1 < len(items) else None
            if (
                isinstance(nxt, FamilyItem)
                and spec.slots[nxt.slot].kind == OMEGA_DESC
                and it.upper == PrimeRef(nxt.slot - 1)
            ):
                out.append((it.lower, PrimeRef(nxt.slot, k + 1)))
                for n in range(k, 0, -1):
                    out.append((PrimeRef(nxt.slot, n), PrimeRef(nxt.slot, n)))
                i += 2
                continue
            out.append((it.lower, it.upper))
            i += 1
            continue
        # ascending family merged with its cap above
        nxt = items[i + 1]
        for n in range(1, k + 1):
            out.append((PrimeRef(it.slot, n), PrimeRef(it.slot, n)))
        out.append((PrimeRef(it.slot, k + 1), nxt.upper))
        i += 2
    return out


# ---------------------------------------------------------------------------
# telescope conjecture


def tc_holds(spec) -> bool:
    """No nonzero prime is idempotent."""
    return not any(slot.idempotent for slot in spec.slots[1:])


def tc_holds_family(specs) -> bool:
    """Telescope criterion across a family of local spectra."""
    return all(tc_holds(s) for s in specs)


# ---------------------------------------------------------------------------
# Thomason sets


@dataclass(frozen=True)
class ThomasonSet:
    """An up-set of a finite prime chain, stored by its least element."""

    start: Optional[int]  # slot index of the least member; None = empty set

    def members(self, spec):
        if self.start is None:
            return []
        return [PrimeRef(i) for i in range(self.start, len(spec.slots))]


def thomason_sets(spec):
    """All up-sets of a finite spectrum, smallest first."""
    spec.require_finite()
    n = len(spec.slots)
    return [ThomasonSet(None)] + [ThomasonSet(k) for k in range(n - 1, -1, -1)]


def chain_to_thomason(spec, chain) -> ThomasonSet:
    """The primes that become the unit ideal in the flat localization."""
    if not is_flat(spec, chain):
        raise NotFlat("only flat chains correspond to Thomason sets")
    if chain.is_empty():
        return ThomasonSet(0)  # S = 0: every prime blows up
    p = chain.items[0].upper.slot
    if p + 1 >= len(spec.slots):
        return ThomasonSet(None)
    return ThomasonSet(p + 1)


def render_thomason(spec, ts) -> str:
    return "{%s}" % ",".join(spec.prime_name(p) for p in ts.members(spec))


# ---------------------------------------------------------------------------
# chain literals


def render_chain(spec, chain) -> str:
    items = sorted(chain.items, key=lambda it: _item_sort_key(spec, it))
    return "{%s}" % ",".join(_describe_item(spec, it) for it in items)


def parse_chain(spec, text) -> IntervalChain:
    cur = TextCursor(text)
    chain = parse_chain_from(spec, cur)
    cur.expect_end()
    return chain


def _parse_endpoint(spec, cur):
    name = cur.match_name()
    if name is None:
        raise cur.error("expected a prime name")
    if name.startswith("f") and name.endswith("_j"):
        return ("family", name[:-2])
    return ("prime", name)


def parse_chain_from(spec, cur) -> IntervalChain:
    cur.expect("{")
    items = []
    if not cur.eat("}"):
        while True:
            cur.expect("[")
            lo = _parse_endpoint(spec, cur)
            cur.expect(",")
            hi = _parse_endpoint(spec, cur)
            cur.expect("]")
            star = cur.eat("*")
            if lo[0] == "family" or hi[0] == "family" or star:
                if not (star and lo == hi and lo[0] == "family"):
                    raise cur.error("family items must look like [f<k>_j,f<k>_j]*")
                try:
                    slot = int(lo[1][1:])
                except ValueError:
                    raise cur.error("bad family name %r" % lo[1])
                items.append(FamilyItem(slot))
            else:
                items.append(
                    IntervalItem(
                        spec.parse_prime_name(lo[1]), spec.parse_prime_name(hi[1])
                    )
                )
            if not cur.eat(","):
                break
        cur.expect("}")
    return chain_of(spec, items)


# ---------------------------------------------------------------------------
# ring rendering


def component_text(spec, lower, upper) -> str:
    zero, top = spec.zero_prime(), spec.top_prime()
    if lower == zero and upper == zero:
        return "Q"
    if lower == zero and upper == top:
        return "R"
    if lower == upper == top:
        return "k"
    if lower == upper:
        return "k(%s)" % spec.prime_name(lower)
    if lower == zero:
        return "R_%s" % spec.prime_name(upper)
    return "R_%s/%s" % (spec.prime_name(upper), spec.prime_name(lower))


def ring_text(spec, descriptor) -> str:
    if descriptor.zero_ring:
        return "0"
    parts = []
    for comp in descriptor.components:
        if comp[0] == "interval":
            parts.append(component_text(spec, comp[1], comp[2]))
        else:
            parts.append("k(%s_j)*" % spec.slot_name(comp[1]))
    body = " x ".join(parts)
    if descriptor.has_family:
        return "dirlim(%s)" % body
    return body
