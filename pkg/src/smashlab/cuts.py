"""Ideals and fractional submodules of a valuation domain as value cuts.

A cut is an upward-closed subset of the value group.  Four constructors are
supported (and deliberately nothing more, so equality stays decidable):

* ``zero_ideal``          -- the empty value set (the zero ideal),
* ``closed(g)``           -- ``{x : x >= g}``, a principal ideal,
* ``open_above(g, H)``    -- ``{x : x - g > h for all h in H}``, a shifted
  prime for the convex subgroup ``H``,
* ``loc_cone(g, H)``      -- ``{x : x - g >= -h for some 0 <= h in H}``, the
  localization at the prime of ``H`` viewed inside the quotient field,
* ``all_values``          -- the whole group (the quotient field).

Internally every cut is normalized to one of four kinds: EMPTY, ALL,
ATLEAST(g, H) = ``{x : x + H >= g + H}`` and ABOVE(g, H) =
``{x : x + H > g + H}``, with the anchor reduced to a canonical coset
representative and ABOVE kept only when the ordered quotient G/H has no least
positive element (otherwise it is promoted by one least-positive step into an
ATLEAST cut).  Structural equality of normal forms then coincides with
equality of value sets.  Any two cuts over one group are comparable, because
up-sets of a chain are totally ordered by inclusion; the Minkowski case table
below is total on the normalized kinds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import GroupMismatch, NotAnIdeal
from .groups import AOElem, ConvexRef, EQUAL, GREATER, Group
from .scanning import TextCursor

EMPTY = "empty"
ALL = "all"
ATLEAST = "atleast"
ABOVE = "above"


@dataclass(frozen=True)
class Cut:
    group: Group
    kind: str
    anchor: object = None
    href: Optional[ConvexRef] = None

    def __repr__(self):
        return "Cut(%s)" % render_cut(self)


# ---------------------------------------------------------------------------
# constructors


def zero_ideal(group) -> Cut:
    return Cut(group, EMPTY)


def all_values(group) -> Cut:
    return Cut(group, ALL)


def closed(group, g) -> Cut:
    return Cut(group, ATLEAST, group.validate(g), group.chain.trivial_ref())


def loc_cone(group, g, href) -> Cut:
    href = group.chain.check_ref(href)
    if href == group.chain.full_ref():
        return all_values(group)
    return Cut(group, ATLEAST, group.reduce_mod(g, href), href)


def open_above(group, g, href) -> Cut:
    href = group.chain.check_ref(href)
    if href == group.chain.full_ref():
        return zero_ideal(group)  # nothing exceeds the whole group
    if group.has_least_positive_mod(href):
        step = group.least_positive_rep(href)
        return Cut(group, ATLEAST, group.reduce_mod(group.add(g, step), href), href)
    return Cut(group, ABOVE, group.reduce_mod(g, href), href)


def prime_cut(group, href) -> Cut:
    """The prime ideal attached to a convex subgroup: values strictly above it."""
    return open_above(group, group.zero(), href)


# ---------------------------------------------------------------------------
# basic predicates


def _same_group(c1, c2):
    if c1.group != c2.group:
        raise GroupMismatch("cuts over different groups")
    return c1.group


def cut_contains(c, x) -> bool:
    g = c.group
    x = g.validate(x)
    if c.kind == EMPTY:
        return False
    if c.kind == ALL:
        return True
    d = g.sub(x, c.anchor)
    cc = g.class_cmp(d, c.href)
    if c.kind == ATLEAST:
        return cc >= EQUAL
    return cc == GREATER


def cut_leq(c1, c2) -> bool:
    """Containment of value sets: c1 is a subset of c2."""
    g = _same_group(c1, c2)
    if c1.kind == EMPTY or c2.kind == ALL:
        return True
    if c2.kind == EMPTY:
        return c1.kind == EMPTY
    if c1.kind == ALL:
        return False
    d = g.sub(c1.anchor, c2.anchor)
    k1, k2 = c1.href.key(), c2.href.key()
    if c1.kind == ATLEAST and c2.kind == ATLEAST:
        if k1 <= k2:
            return g.class_cmp(d, c2.href) >= EQUAL
        return g.class_cmp(d, c1.href) == GREATER
    if c1.kind == ABOVE and c2.kind == ATLEAST:
        href = c2.href if k1 <= k2 else c1.href
        return g.class_cmp(d, href) >= EQUAL
    if c1.kind == ATLEAST and c2.kind == ABOVE:
        href = c2.href if k1 <= k2 else c1.href
        return g.class_cmp(d, href) == GREATER
    # ABOVE vs ABOVE
    if k1 < k2:
        return g.class_cmp(d, c2.href) == GREATER
    return g.class_cmp(d, c1.href) >= EQUAL


def cuts_equal(c1, c2) -> bool:
    _same_group(c1, c2)
    return c1 == c2


# ---------------------------------------------------------------------------
# lattice operations (up-sets of a chain are totally ordered by inclusion)


def ideal_sum(c1, c2) -> Cut:
    """Sum of ideals: the union of the cuts (the larger value set)."""
    return c2 if cut_leq(c1, c2) else c1


def ideal_intersection(c1, c2) -> Cut:
    return c1 if cut_leq(c1, c2) else c2


def minkowski(c1, c2) -> Cut:
    """Value sumset {x + y}, the cut of the ideal product."""
    g = _same_group(c1, c2)
    if c1.kind == EMPTY or c2.kind == EMPTY:
        return zero_ideal(g)
    if c1.kind == ALL or c2.kind == ALL:
        return all_values(g)
    total = g.add(c1.anchor, c2.anchor)
    k1, k2 = c1.href.key(), c2.href.key()
    big = c1.href if k1 >= k2 else c2.href
    if c1.kind == ATLEAST and c2.kind == ATLEAST:
        return Cut(g, ATLEAST, g.reduce_mod(total, big), big)
    if c1.kind == ABOVE and c2.kind == ABOVE:
        return Cut(g, ABOVE, g.reduce_mod(total, big), big)
    # one ATLEAST, one ABOVE
    al, ab = (c1, c2) if c1.kind == ATLEAST else (c2, c1)
    if al.href.key() <= ab.href.key():
        return Cut(g, ABOVE, g.reduce_mod(total, ab.href), ab.href)
    return Cut(g, ATLEAST, g.reduce_mod(total, al.href), al.href)


def is_integral(c) -> bool:
    """Whether the cut contains only values >= 0 (an honest ideal)."""
    return cut_leq(c, closed(c.group, c.group.zero()))


def is_idempotent(c) -> bool:
    """Closed-form idempotency test for an integral ideal cut.

    ZeroIdeal is idempotent; a principal cut only at value 0; a strict cut
    above a convex subgroup is idempotent exactly when its anchor class is
    zero (the quotient is dense by normal-form construction); any other
    integral at-least cut sits strictly above its subgroup, so doubling moves
    it.
    """
    if c.kind == ALL:
        raise NotAnIdeal("the whole group is not an integral ideal")
    if not is_integral(c):
        raise NotAnIdeal("cut contains negative values")
    if c.kind == EMPTY:
        return True
    g = c.group
    if c.kind == ABOVE:
        return c.anchor == g.reduce_mod(g.zero(), c.href)
    if c.href == g.chain.trivial_ref():
        return c.anchor == g.zero()
    return False


# ---------------------------------------------------------------------------
# support


@dataclass(frozen=True)
class FamilySupport:
    """All primes of one omega-family containing an ideal, up to a member bound."""

    slot: int
    upto: Optional[int]  # None means every member


def _element_depth(x):
    if isinstance(x, tuple):
        return max((_element_depth(c) for c in x), default=0)
    if isinstance(x, AOElem):
        return max((i for i, _ in x.items), default=0)
    return 0


def support_primes(group, c):
    """All primes (as chain references) whose cut contains the given one."""
    if c.group != group:
        raise GroupMismatch("cut not over this group")
    out = []
    depth = _element_depth(c.anchor) if c.anchor is not None else 0
    bound = depth + 2
    for slot in range(len(group.chain.slots)):
        if not group.chain.is_family(slot):
            ref = ConvexRef(slot)
            if cut_leq(c, prime_cut(group, ref)):
                out.append(ref)
            continue
        hits = [n for n in range(1, bound + 1) if cut_leq(c, prime_cut(group, ConvexRef(slot, n)))]
        if hits != list(range(1, len(hits) + 1)):
            raise AssertionError("family membership not an initial segment")
        if len(hits) == bound:
            out.append(FamilySupport(slot, None))
        elif hits:
            out.append(FamilySupport(slot, hits[-1]))
    return out


# ---------------------------------------------------------------------------
# text form


def render_cut(c) -> str:
    g = c.group
    if c.kind == EMPTY:
        return "zero"
    if c.kind == ALL:
        return "all"
    if c.kind == ATLEAST and c.href == g.chain.trivial_ref():
        return "closed(%s)" % g.render(c.anchor)
    name = g.chain.render_ref(c.href)
    if c.kind == ATLEAST:
        return "loccone(%s, %s)" % (g.render(c.anchor), name)
    return "open(%s, %s)" % (g.render(c.anchor), name)


def parse_cut(group, text) -> Cut:
    cur = TextCursor(text)
    c = parse_cut_from(group, cur)
    cur.expect_end()
    return c


def parse_cut_from(group, cur) -> Cut:
    from .groups import parse_element_text

    name = cur.match_name()
    if name is None:
        raise cur.error("expected a cut literal")
    low = name.lower()
    if low == "zero":
        return zero_ideal(group)
    if low == "all":
        return all_values(group)
    if low == "closed":
        cur.expect("(")
        elem = group.validate(parse_element_text(cur))
        cur.expect(")")
        return closed(group, elem)
    if low in ("open", "loccone"):
        cur.expect("(")
        elem = group.validate(parse_element_text(cur))
        cur.expect(",")
        ref = group.chain.parse_ref_from(cur)
        cur.expect(")")
        if low == "open":
            return open_above(group, elem, ref)
        return loc_cone(group, elem, ref)
    raise cur.error("unknown cut constructor %r" % name)
