"""Shared samplers and independent oracles for the test suite."""

from fractions import Fraction

from smashlab.groups import AOElem, ConvexRef, ao
from smashlab.cuts import closed, loc_cone, open_above, zero_ideal, all_values


# ---------------------------------------------------------------------------
# element sampling


def sample_element(group, rng, span=6):
    return _sample(group.descriptor, rng, span)


def _sample(desc, rng, span):
    if desc.kind == "int":
        return Fraction(rng.randint(-span, span))
    if desc.kind == "rat":
        return Fraction(rng.randint(-span, span), rng.randint(1, span))
    if desc.kind == "intloc":
        return Fraction(rng.randint(-span, span), desc.loc ** rng.randint(0, 2))
    if desc.kind == "lex":
        return tuple(_sample(p, rng, span) for p in desc.parts)
    base = desc.parts[0]
    support = rng.sample(range(1, 5), rng.randint(0, 3))
    return ao({i: _sample(base, rng, span) for i in support})


def sample_positive(group, rng, span=6, tries=200):
    zero = group.zero()
    for _ in range(tries):
        x = sample_element(group, rng, span)
        if group.cmp(x, zero) > 0:
            return x
    raise AssertionError("could not sample a positive element")


def smaller_positive(group, x):
    """A positive element strictly below x, or None if x could be least."""
    y = _smaller(group.descriptor, group.validate(x))
    if y is None:
        return None
    y = group.validate(y)
    zero = group.zero()
    assert group.cmp(y, zero) > 0 and group.cmp(y, x) < 0
    return y


def _smaller(desc, x):
    if desc.kind == "int":
        return x - 1 if x > 1 else None
    if desc.kind in ("rat", "intloc"):
        l = desc.loc if desc.kind == "intloc" else 2
        return x / l
    if desc.kind == "lex":
        for i, part in enumerate(desc.parts):
            from smashlab.groups import _zero as gzero  # noqa: internal helper

            if x[i] == gzero(part):
                continue
            # a positive head dominates the tail: shrink any later coordinate
            if i + 1 < len(desc.parts):
                tail = desc.parts[i + 1]
                small = _any_positive(tail)
                if small is not None:
                    out = list(x)
                    from smashlab.groups import _neg, _add

                    out[i + 1] = _add(tail, x[i + 1], _neg(tail, small))
                    return tuple(out)
            sub = _smaller(part, x[i])
            if sub is None:
                return None
            out = list(x)
            out[i] = sub
            return tuple(out)
        return None
    # antilex: shrink the top coefficient
    top, val = x.items[-1]
    sub = _smaller(desc.parts[0], val)
    if sub is None:
        if top > 1:
            return ao({1: _any_positive(desc.parts[0])})
        return None
    rest = dict(x.items[:-1])
    rest[top] = sub
    return ao(rest)


def _any_positive(desc):
    if desc.kind in ("int", "rat", "intloc"):
        return Fraction(1)
    if desc.kind == "lex":
        from smashlab.groups import _zero as gzero

        out = [gzero(p) for p in desc.parts]
        out[-1] = _any_positive(desc.parts[-1])
        return tuple(out)
    return ao({1: _any_positive(desc.parts[0])})


# ---------------------------------------------------------------------------
# convex references and cuts


def chain_refs(group, max_member=3):
    refs = []
    for slot in range(len(group.chain.slots)):
        if group.chain.is_family(slot):
            refs.extend(ConvexRef(slot, n) for n in range(1, max_member + 1))
        else:
            refs.append(ConvexRef(slot))
    return refs


def sample_cut(group, rng, span=4):
    kind = rng.randrange(5)
    if kind == 0:
        return zero_ideal(group)
    if kind == 1:
        return all_values(group)
    g = sample_element(group, rng, span)
    if kind == 2:
        return closed(group, g)
    ref = rng.choice(chain_refs(group))
    if kind == 3:
        return open_above(group, g, ref)
    return loc_cone(group, g, ref)


def sample_ideal_cut(group, rng, span=4, tries=400):
    """A random integral ideal cut (values >= 0)."""
    from smashlab.cuts import is_integral

    zero = group.zero()
    for _ in range(tries):
        kind = rng.randrange(4)
        if kind == 0:
            return zero_ideal(group)
        g = sample_element(group, rng, span)
        if group.cmp(g, zero) < 0:
            continue
        if kind == 1:
            return closed(group, g)
        ref = rng.choice(chain_refs(group))
        c = open_above(group, g, ref) if kind == 2 else loc_cone(group, g, ref)
        if c.kind != "all" and is_integral(c):
            return c
    raise AssertionError("could not sample an ideal cut")


# ---------------------------------------------------------------------------
# independent enumeration oracle
#
# Fixpoint closure over unordered interval sets, with separation expressed as
# disjointness of index ranges; intentionally a different algorithm and a
# different predicate than the library's ordered depth-first enumeration.


def oracle_chains(flags):
    n = len(flags)
    intervals = [(i, p) for i in range(n) if flags[i] for p in range(i, n)]

    def disjoint(a, b):
        return a[1] < b[0] or b[1] < a[0]

    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for chain in frontier:
            for iv in intervals:
                if all(disjoint(iv, other) for other in chain):
                    grown = chain | {iv}
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
        frontier = nxt
    return seen


def chains_as_sets(spec, chains):
    out = set()
    for c in chains:
        out.add(frozenset((it.lower.slot, it.upper.slot) for it in c.items))
    return out


def all_flag_patterns(n):
    """All idempotency patterns for n primes; the bottom flag is forced."""
    for bits in range(2 ** (n - 1)):
        yield [True] + [(bits >> i) & 1 == 1 for i in range(n - 1)]


# ---------------------------------------------------------------------------
# ring element sampling


def sample_series_map(group, rng, terms=3, span=4, basket=None):
    out = {}
    zero = group.zero()
    for _ in range(rng.randint(1, terms)):
        if basket is not None:
            g = rng.choice(basket)
        else:
            g = sample_element(group, rng, span)
        if group.cmp(g, zero) < 0:
            g = group.neg(g)
        out[g] = Fraction(rng.randint(-5, 5))
    return out


def exponent_basket(group, rng, size=4, span=2, tries=64):
    """A small set of nonnegative exponents shared across one matrix.

    Small values keep the exponent lattice generated during elimination
    dense, which is where cancellations (rank drops, zero diagonals) live.
    """
    zero = group.zero()
    out = [zero]
    for _ in range(tries):
        if len(out) >= size:
            break
        g = sample_element(group, rng, span)
        if group.cmp(g, zero) < 0:
            g = group.neg(g)
        if g not in out:
            out.append(g)
    return out


def _term_count(rng):
    # support sizes up to 4; monomials and binomials dominate
    return rng.choices([1, 2, 3, 4], weights=[50, 28, 14, 8])[0]


def _dim(rng, max_dim):
    return min(max_dim, rng.choice([1, 2, 2, 3, 3, 4, 4, 5]))


def sample_matrix(group, rng, field=None, max_dim=5):
    """A random matrix with polynomial entries over a small exponent basket."""
    from smashlab.ring import QQ, element, matrix

    field = field or QQ
    # rank-one value groups tolerate a wider exponent lattice than products
    size = 4 if group.descriptor.kind in ("int", "rat", "intloc") else 3
    basket = exponent_basket(group, rng, size=size, span=1)
    m, n = _dim(rng, max_dim), _dim(rng, max_dim)
    rows = []
    for _ in range(m):
        row = []
        for _ in range(n):
            if rng.random() < 0.25:
                row.append(element(group, field, {}))
            else:
                row.append(
                    element(
                        group,
                        field,
                        {
                            rng.choice(basket): Fraction(rng.randint(-5, 5))
                            for _ in range(_term_count(rng))
                        },
                    )
                )
        rows.append(row)
    return matrix(group, field, rows)


def sample_ring_element(group, rng, field=None, terms=3, span=4, nonzero=False, unit_den=False):
    from smashlab.ring import QQ, element, zero_elem

    field = field or QQ
    for _ in range(50):
        num = sample_series_map(group, rng, terms, span)
        if unit_den or rng.random() < 0.7:
            den = {group.zero(): Fraction(1)}
        else:
            den = sample_series_map(group, rng, 2, span)
            den[group.zero()] = Fraction(rng.randint(1, 5))
        try:
            x = element(group, field, num, den)
        except Exception:
            continue
        if nonzero and x.is_zero():
            continue
        return x
    return zero_elem(group, field)
