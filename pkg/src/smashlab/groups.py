"""Totally ordered abelian value groups built from a small constructor algebra.

Constructors: the integers ``Z``, the rationals ``Q``, the localization
``Zloc(l)`` of Z at l (denominators divide a power of l), finite lexicographic
products ``lex(...)`` with the first coordinate most significant, and the
countable direct sum ``antilex_omega(base)`` ordered antilexicographically
(highest nonzero index most significant) over an archimedean base.

All elements are exact; no floating point is used anywhere.  Every value is
immutable after construction and every operation is pure, so unrestricted
concurrent use is safe.

The chain of convex subgroups of each constructor group has a finite symbolic
description: finitely many single subgroups plus at most one ascending
omega-family per antilexicographic summand.  Convex subgroups are referenced
by their position in that chain (family members by ``(slot, n)``), which is
what the idempotency test ``has_least_positive_mod`` and the cut layer
consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import InvalidDescriptor, TypeMismatch, UnknownSubgroup
from .scanning import TextCursor

LESS, EQUAL, GREATER = -1, 0, 1

_ATOMS = ("int", "rat", "intloc")


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class GroupDescriptor:
    """Constructor tree for a totally ordered abelian group."""

    kind: str
    loc: Optional[int] = None
    parts: tuple = ()


INT = GroupDescriptor("int")
RAT = GroupDescriptor("rat")


def int_loc(l) -> GroupDescriptor:
    if not isinstance(l, int) or l < 2:
        raise InvalidDescriptor("Zloc requires an integer l >= 2, got %r" % (l,))
    return GroupDescriptor("intloc", loc=l)


def lex(*parts) -> GroupDescriptor:
    if not parts:
        raise InvalidDescriptor("lex requires at least one part")
    for p in parts:
        if not isinstance(p, GroupDescriptor):
            raise InvalidDescriptor("lex parts must be group descriptors")
    return GroupDescriptor("lex", parts=tuple(parts))


def antilex_omega(base) -> GroupDescriptor:
    if not isinstance(base, GroupDescriptor) or base.kind not in _ATOMS:
        raise InvalidDescriptor("antilex_omega base must be Z, Q or Zloc(l)")
    return GroupDescriptor("antilex_omega", parts=(base,))


def _validate_descriptor(desc):
    if not isinstance(desc, GroupDescriptor):
        raise InvalidDescriptor("not a group descriptor: %r" % (desc,))
    if desc.kind == "int" or desc.kind == "rat":
        return
    if desc.kind == "intloc":
        if not isinstance(desc.loc, int) or desc.loc < 2:
            raise InvalidDescriptor("Zloc requires l >= 2")
        return
    if desc.kind == "lex":
        if not desc.parts:
            raise InvalidDescriptor("lex requires at least one part")
        for p in desc.parts:
            _validate_descriptor(p)
        return
    if desc.kind == "antilex_omega":
        if len(desc.parts) != 1 or desc.parts[0].kind not in _ATOMS:
            raise InvalidDescriptor("antilex_omega base must be Z, Q or Zloc(l)")
        return
    raise InvalidDescriptor("unknown descriptor kind %r" % desc.kind)


def render_descriptor(desc) -> str:
    if desc.kind == "int":
        return "Z"
    if desc.kind == "rat":
        return "Q"
    if desc.kind == "intloc":
        return "Zloc(%d)" % desc.loc
    if desc.kind == "lex":
        return "lex(%s)" % ",".join(render_descriptor(p) for p in desc.parts)
    return "antilex_omega(%s)" % render_descriptor(desc.parts[0])


def parse_descriptor(text) -> GroupDescriptor:
    cur = TextCursor(text)
    desc = _parse_descriptor(cur)
    cur.expect_end()
    return desc


def _parse_descriptor(cur):
    name = cur.match_name()
    if name is None:
        raise cur.error("expected a group descriptor")
    low = name.lower()
    if low == "z":
        return INT
    if low == "q":
        return RAT
    if low == "zloc":
        cur.expect("(")
        l = cur.match_int()
        if l is None:
            raise cur.error("Zloc needs an integer argument")
        cur.expect(")")
        return int_loc(l)
    if low == "lex":
        cur.expect("(")
        parts = [_parse_descriptor(cur)]
        while cur.eat(","):
            parts.append(_parse_descriptor(cur))
        cur.expect(")")
        return lex(*parts)
    if low == "antilex_omega":
        cur.expect("(")
        base = _parse_descriptor(cur)
        cur.expect(")")
        return antilex_omega(base)
    raise cur.error("unknown group constructor %r" % name)


# ---------------------------------------------------------------------------
# elements
#
# Int/Rat/Zloc elements are Fractions; lex elements are tuples of component
# elements; antilex_omega elements are AOElem wrappers holding a sorted tuple
# of (index, nonzero base element) pairs so they stay hashable.


@dataclass(frozen=True)
class AOElem:
    items: tuple

    def support(self):
        return tuple(i for i, _ in self.items)

    def __repr__(self):
        return "AOElem(%r)" % (dict(self.items),)


def ao(mapping) -> AOElem:
    """Build an antilex element from an index -> value mapping."""
    if isinstance(mapping, AOElem):
        return mapping
    items = []
    for idx in sorted(mapping):
        val = mapping[idx]
        if not isinstance(val, Fraction):
            val = Fraction(val)
        if val != 0:
            items.append((int(idx), val))
    return AOElem(tuple(items))


def _is_power_denominator(den, l):
    while den > 1:
        g = gcd(den, l)
        if g == 1:
            return False
        den //= g
    return True


def _zero(desc):
    if desc.kind in _ATOMS:
        return Fraction(0)
    if desc.kind == "lex":
        return tuple(_zero(p) for p in desc.parts)
    return AOElem(())


def _validate(desc, x):
    if desc.kind == "int":
        if isinstance(x, int):
            x = Fraction(x)
        if not isinstance(x, Fraction) or x.denominator != 1:
            raise TypeMismatch("expected an integer, got %r" % (x,))
        return x
    if desc.kind == "rat":
        if isinstance(x, int):
            x = Fraction(x)
        if not isinstance(x, Fraction):
            raise TypeMismatch("expected a rational, got %r" % (x,))
        return x
    if desc.kind == "intloc":
        if isinstance(x, int):
            x = Fraction(x)
        if not isinstance(x, Fraction):
            raise TypeMismatch("expected a rational, got %r" % (x,))
        if not _is_power_denominator(x.denominator, desc.loc):
            raise TypeMismatch("%s has a denominator not dividing a power of %d" % (x, desc.loc))
        return x
    if desc.kind == "lex":
        if not isinstance(x, tuple) or len(x) != len(desc.parts):
            raise TypeMismatch("expected a %d-tuple, got %r" % (len(desc.parts), x))
        return tuple(_validate(p, c) for p, c in zip(desc.parts, x))
    if isinstance(x, dict):
        x = ao(x)
    if not isinstance(x, AOElem):
        raise TypeMismatch("expected a finite index map, got %r" % (x,))
    base = desc.parts[0]
    items = []
    for idx, val in x.items:
        if not isinstance(idx, int) or idx < 1:
            raise TypeMismatch("antilex indices must be integers >= 1")
        val = _validate(base, val)
        if val != 0:
            items.append((idx, val))
    items.sort()
    return AOElem(tuple(items))


def _add(desc, a, b):
    if desc.kind in _ATOMS:
        return a + b
    if desc.kind == "lex":
        return tuple(_add(p, x, y) for p, x, y in zip(desc.parts, a, b))
    # merge of index-sorted item lists
    ta, tb = a.items, b.items
    if not ta:
        return b
    if not tb:
        return a
    out = []
    i = j = 0
    while i < len(ta) and j < len(tb):
        ia, va = ta[i]
        ib, vb = tb[j]
        if ia == ib:
            s = va + vb
            if s != 0:
                out.append((ia, s))
            i += 1
            j += 1
        elif ia < ib:
            out.append(ta[i])
            i += 1
        else:
            out.append(tb[j])
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return AOElem(tuple(out))


def _neg(desc, a):
    if desc.kind in _ATOMS:
        return -a
    if desc.kind == "lex":
        return tuple(_neg(p, x) for p, x in zip(desc.parts, a))
    return AOElem(tuple((i, -v) for i, v in a.items))


def _cmp(desc, a, b):
    if desc.kind in _ATOMS:
        return (a > b) - (a < b)
    if desc.kind == "lex":
        for p, x, y in zip(desc.parts, a, b):
            c = _cmp(p, x, y)
            if c != 0:
                return c
        return 0
    # antilex: compare from the highest index down, no difference allocated
    ta, tb = a.items, b.items
    i, j = len(ta) - 1, len(tb) - 1
    while i >= 0 or j >= 0:
        ia = ta[i][0] if i >= 0 else None
        ib = tb[j][0] if j >= 0 else None
        if ib is None or (ia is not None and ia > ib):
            return GREATER if ta[i][1] > 0 else LESS
        if ia is None or ib > ia:
            return LESS if tb[j][1] > 0 else GREATER
        va, vb = ta[i][1], tb[j][1]
        if va != vb:
            return GREATER if va > vb else LESS
        i -= 1
        j -= 1
    return EQUAL


def render_element(desc, x) -> str:
    if desc.kind in _ATOMS:
        return str(x)
    if desc.kind == "lex":
        return "(%s)" % ",".join(render_element(p, c) for p, c in zip(desc.parts, x))
    base = desc.parts[0]
    return "{%s}" % ", ".join("%d:%s" % (i, render_element(base, v)) for i, v in x.items)


def parse_element_text(cur):
    """Parse a structural element literal: fraction, tuple or index map."""
    if cur.peek() == "(":
        cur.expect("(")
        items = [parse_element_text(cur)]
        while cur.eat(","):
            items.append(parse_element_text(cur))
        cur.expect(")")
        return tuple(items)
    if cur.peek() == "{":
        cur.expect("{")
        mapping = {}
        if not cur.eat("}"):
            while True:
                idx = cur.match_int()
                if idx is None:
                    raise cur.error("expected an index")
                cur.expect(":")
                val = parse_element_text(cur)
                mapping[idx] = val
                if not cur.eat(","):
                    break
            cur.expect("}")
        return mapping
    frac = cur.match_fraction()
    if frac is None:
        raise cur.error("expected an element literal")
    return frac


# ---------------------------------------------------------------------------
# convex subgroup chain
#
# A convex subgroup is described structurally relative to the constructor
# tree:
#   CTriv            trivial subgroup
#   CFull            whole group
#   COmega(n)        finite-support part F_n of an antilex sum (indices <= n)
#   CLex(j, inner)   zeros below coordinate j, `inner` at coordinate j,
#                    everything above coordinate j (lex groups only)


@dataclass(frozen=True)
class CTriv:
    pass


@dataclass(frozen=True)
class CFull:
    pass


@dataclass(frozen=True)
class COmega:
    n: int


@dataclass(frozen=True)
class CLex:
    level: int
    inner: object


@dataclass(frozen=True)
class ConvexRef:
    """Position of a convex subgroup in the chain; family members carry n >= 1."""

    slot: int
    member: Optional[int] = None

    def key(self):
        return (self.slot, self.member if self.member is not None else 0)


@dataclass(frozen=True)
class SingleSlot:
    spec: object


@dataclass(frozen=True)
class FamilySlot:
    # nesting of lex levels wrapping the COmega family of one antilex summand
    levels: tuple

    def member_spec(self, n):
        spec = COmega(n)
        for level in reversed(self.levels):
            spec = CLex(level, spec)
        return spec


def _chain_slots(desc):
    if desc.kind in _ATOMS:
        return [SingleSlot(CTriv()), SingleSlot(CFull())]
    if desc.kind == "antilex_omega":
        return [SingleSlot(CTriv()), FamilySlot(()), SingleSlot(CFull())]
    # lex: ascend through the chain of the least significant part first
    slots = [SingleSlot(CTriv())]
    k = len(desc.parts)
    for j in range(k - 1, -1, -1):
        inner = _chain_slots(desc.parts[j])[1:-1]  # proper nontrivial subgroups
        for s in inner:
            if isinstance(s, SingleSlot):
                slots.append(SingleSlot(CLex(j, s.spec)))
            else:
                slots.append(FamilySlot((j,) + s.levels))
        if j >= 1:
            slots.append(SingleSlot(CLex(j - 1, CTriv())))
        else:
            slots.append(SingleSlot(CFull()))
    return slots


def _in_subgroup(desc, spec, x):
    if isinstance(spec, CTriv):
        return x == _zero(desc)
    if isinstance(spec, CFull):
        return True
    if isinstance(spec, COmega):
        return all(i <= spec.n for i, _ in x.items)
    j = spec.level
    for i in range(j):
        if x[i] != _zero(desc.parts[i]):
            return False
    return _in_subgroup(desc.parts[j], spec.inner, x[j])


def _reduce_mod(desc, spec, x):
    """Canonical representative of the coset x + H."""
    if isinstance(spec, CTriv):
        return x
    if isinstance(spec, CFull):
        return _zero(desc)
    if isinstance(spec, COmega):
        return AOElem(tuple((i, v) for i, v in x.items if i > spec.n))
    j = spec.level
    out = list(x[:j])
    out.append(_reduce_mod(desc.parts[j], spec.inner, x[j]))
    out.extend(_zero(p) for p in desc.parts[j + 1 :])
    return tuple(out)


def _group_has_lp(desc):
    """Whether the group itself has a least positive element."""
    if desc.kind == "int":
        return True
    if desc.kind in ("rat", "intloc"):
        return False
    if desc.kind == "antilex_omega":
        return _group_has_lp(desc.parts[0])
    return _group_has_lp(desc.parts[-1])


def _group_lp_rep(desc):
    if desc.kind == "int":
        return Fraction(1)
    if desc.kind == "antilex_omega":
        return AOElem(((1, _group_lp_rep(desc.parts[0])),))
    # lex: least positive sits in the least significant coordinate
    out = [_zero(p) for p in desc.parts]
    out[-1] = _group_lp_rep(desc.parts[-1])
    return tuple(out)


def _has_lp_mod(desc, spec):
    if isinstance(spec, CFull):
        return False
    if isinstance(spec, CTriv):
        return _group_has_lp(desc)
    if isinstance(spec, COmega):
        return _group_has_lp(desc.parts[0])
    return _has_lp_mod(desc.parts[spec.level], spec.inner)


def _lp_rep_mod(desc, spec):
    """An element of G representing the least positive class of G/H."""
    if isinstance(spec, CTriv):
        return _group_lp_rep(desc)
    if isinstance(spec, COmega):
        return AOElem(((spec.n + 1, _group_lp_rep(desc.parts[0])),))
    j = spec.level
    out = [_zero(p) for p in desc.parts]
    out[j] = _lp_rep_mod(desc.parts[j], spec.inner)
    return tuple(out)


class ConvexChain:
    """The full chain of convex subgroups of a constructor group."""

    def __init__(self, descriptor):
        self.descriptor = descriptor
        self.slots = tuple(_chain_slots(descriptor))

    def __len__(self):
        return len(self.slots)

    def trivial_ref(self):
        return ConvexRef(0)

    def full_ref(self):
        return ConvexRef(len(self.slots) - 1)

    def is_family(self, slot):
        return isinstance(self.slots[slot], FamilySlot)

    def check_ref(self, ref):
        if not isinstance(ref, ConvexRef) or not (0 <= ref.slot < len(self.slots)):
            raise UnknownSubgroup("no chain slot %r" % (ref,))
        slot = self.slots[ref.slot]
        if isinstance(slot, FamilySlot):
            if ref.member is None or ref.member < 1:
                raise UnknownSubgroup("family slot %d needs a member index >= 1" % ref.slot)
        elif ref.member is not None:
            raise UnknownSubgroup("slot %d is not a family" % ref.slot)
        return ref

    def resolve(self, ref):
        self.check_ref(ref)
        slot = self.slots[ref.slot]
        if isinstance(slot, FamilySlot):
            return slot.member_spec(ref.member)
        return slot.spec

    def render_ref(self, ref):
        if ref.member is None:
            return "H%d" % ref.slot
        return "H%d_%d" % (ref.slot, ref.member)

    def parse_ref(self, text):
        cur = TextCursor(text)
        ref = self.parse_ref_from(cur)
        cur.expect_end()
        return ref

    def parse_ref_from(self, cur):
        name = cur.match_name()
        if name is None or not name.startswith("H"):
            raise cur.error("expected a convex subgroup reference H<slot>")
        body = name[1:]
        if "_" in body:
            s, n = body.split("_", 1)
            ref = ConvexRef(int(s), int(n))
        else:
            ref = ConvexRef(int(body))
        return self.check_ref(ref)


# ---------------------------------------------------------------------------
# groups


class Group:
    """A validated ordered abelian group with exact element arithmetic."""

    def __init__(self, descriptor):
        _validate_descriptor(descriptor)
        self.descriptor = descriptor
        self._chain = None

    def __eq__(self, other):
        return isinstance(other, Group) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return "Group(%s)" % render_descriptor(self.descriptor)

    # elements ------------------------------------------------------------

    def zero(self):
        return _zero(self.descriptor)

    def validate(self, x):
        return _validate(self.descriptor, x)

    def add(self, a, b):
        return _add(self.descriptor, self.validate(a), self.validate(b))

    def neg(self, a):
        return _neg(self.descriptor, self.validate(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def cmp(self, a, b):
        return _cmp(self.descriptor, self.validate(a), self.validate(b))

    # raw variants for hot loops over already-canonical elements

    def raw_add(self, a, b):
        return _add(self.descriptor, a, b)

    def raw_neg(self, a):
        return _neg(self.descriptor, a)

    def raw_sub(self, a, b):
        return _add(self.descriptor, a, _neg(self.descriptor, b))

    def raw_cmp(self, a, b):
        return _cmp(self.descriptor, a, b)

    def is_zero(self, a):
        return self.validate(a) == self.zero()

    def is_positive(self, a):
        return self.cmp(a, self.zero()) == GREATER

    def render(self, a):
        return render_element(self.descriptor, a)

    def parse_element(self, text):
        cur = TextCursor(text)
        raw = parse_element_text(cur)
        cur.expect_end()
        return self.validate(raw)

    # convex chain ---------------------------------------------------------

    @property
    def chain(self) -> ConvexChain:
        if self._chain is None:
            self._chain = ConvexChain(self.descriptor)
        return self._chain

    def convex_chain(self):
        return self.chain

    def in_subgroup(self, x, ref):
        spec = self.chain.resolve(ref)
        return _in_subgroup(self.descriptor, spec, self.validate(x))

    def reduce_mod(self, x, ref):
        spec = self.chain.resolve(ref)
        return _reduce_mod(self.descriptor, spec, self.validate(x))

    def class_cmp(self, x, ref):
        """Compare the class of x against zero in the ordered quotient G/H."""
        x = self.validate(x)
        if self.in_subgroup(x, ref):
            return EQUAL
        return self.cmp(x, self.zero())

    def has_least_positive_mod(self, ref):
        spec = self.chain.resolve(ref)
        return _has_lp_mod(self.descriptor, spec)

    def least_positive_rep(self, ref):
        spec = self.chain.resolve(ref)
        if not _has_lp_mod(self.descriptor, spec):
            raise UnknownSubgroup("quotient modulo %r has no least positive element" % (ref,))
        return _lp_rep_mod(self.descriptor, spec)


def build_group(descriptor) -> Group:
    """Validate a descriptor and return the group handle."""
    return Group(descriptor)
