"""A computable valuation-domain model over a constructor value group.

Elements are quotients of finite-support "monomial series" with exponents in
the nonnegative part of the value group; denominators carry a term of value
zero, i.e. the finite-support monoid algebra is localized at its augmentation
ideal.  In this model every nonzero element is a unit times a monomial, so
valuations, divisibility, Smith normal form and the componentwise linear
algebra behind Mazet presentations are exact and terminating.

Coefficients default to exact rationals; a prime-field option exists solely
to check that all value-level outputs are independent of the base field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .cuts import cut_contains, prime_cut
from .errors import (
    DenominatorNotUnit,
    DimensionMismatch,
    DivisionByZero,
    GroupMismatch,
    InvalidDescriptor,
    NotDivisible,
    ParseError,
    SigmaInPrime,
    UnsupportedComponent,
)
from .groups import EQUAL, GREATER, Group, parse_element_text, render_element
from .scanning import TextCursor


class _Infinity:
    """Valuation of the zero element."""

    def __repr__(self):
        return "oo"


INFINITY = _Infinity()


# ---------------------------------------------------------------------------
# coefficient fields


class RationalField:
    name = "Q"

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("no inverse of 0")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def one(self):
        return Fraction(1)

    def render(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField:
    def __init__(self, p):
        if not isinstance(p, int) or p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise InvalidDescriptor("characteristic must be a prime number")
        self.p = p
        self.name = "GF(%d)" % p

    def coerce(self, x):
        x = Fraction(x)
        den = x.denominator % self.p
        if den == 0:
            raise DivisionByZero("denominator divisible by %d" % self.p)
        return (x.numerator % self.p) * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("no inverse of 0")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def one(self):
        return 1

    def render(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


# ---------------------------------------------------------------------------
# series and ring elements


@dataclass(frozen=True)
class Series:
    group: Group
    field: object
    terms: tuple  # ((exponent, coefficient), ...) sorted by exponent

    def is_zero(self):
        return not self.terms

    def valuation(self):
        return self.terms[0][0] if self.terms else None


def _sorted_terms(group, acc):
    key = cmp_to_key(group.raw_cmp)
    return tuple(sorted(acc.items(), key=lambda t: key(t[0])))


def series(group, field, mapping) -> Series:
    acc = {}
    for g, c in dict(mapping).items():
        g = group.validate(g)
        c = field.coerce(c)
        if field.is_zero(c):
            continue
        if g in acc:
            c = field.add(acc[g], c)
            if field.is_zero(c):
                del acc[g]
                continue
        acc[g] = c
    return Series(group, field, _sorted_terms(group, acc))


def s_add(a: Series, b: Series) -> Series:
    # merge of two term lists already sorted by the group order
    f = a.field
    cmp = a.group.raw_cmp
    ta, tb = a.terms, b.terms
    i = j = 0
    out = []
    while i < len(ta) and j < len(tb):
        ga, ca = ta[i]
        gb, cb = tb[j]
        if ga == gb:
            c = f.add(ca, cb)
            if not f.is_zero(c):
                out.append((ga, c))
            i += 1
            j += 1
        elif cmp(ga, gb) < 0:
            out.append(ta[i])
            i += 1
        else:
            out.append(tb[j])
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return Series(a.group, f, tuple(out))


def s_neg(a: Series) -> Series:
    return Series(a.group, a.field, tuple((g, a.field.neg(c)) for g, c in a.terms))


def s_mul(a: Series, b: Series) -> Series:
    # fold of shifted copies of the shorter factor over the longer one
    f = a.field
    grp = a.group
    if len(a.terms) > len(b.terms):
        a, b = b, a
    radd = grp.raw_add
    acc = Series(grp, f, ())
    for g1, c1 in a.terms:
        row = tuple((radd(g1, g2), f.mul(c1, c2)) for g2, c2 in b.terms)
        acc = s_add(acc, Series(grp, f, row))
    return acc


def s_shift(a: Series, g) -> Series:
    grp = a.group
    return Series(grp, a.field, tuple((grp.raw_add(e, g), c) for e, c in a.terms))


def s_one(group, field) -> Series:
    return Series(group, field, ((group.zero(), field.one()),))


def s_zero(group, field) -> Series:
    return Series(group, field, ())


def s_monomial(group, field, g, c=1) -> Series:
    c = field.coerce(c)
    if field.is_zero(c):
        return s_zero(group, field)
    return Series(group, field, ((group.validate(g), c),))


def _poly_div_exact(num: Series, den: Series, max_terms=None):
    """Exact quotient num/den in the monoid algebra, or None.

    The denominator has a term of minimal value; each step cancels the lowest
    remaining term, so the loop terminates as soon as the division is exact.
    A term budget aborts the (possibly infinite) inexact case.
    """
    grp, f = num.group, num.field
    if max_terms is None:
        max_terms = min(64, 4 * (len(num.terms) + len(den.terms)) + 8)
    lead_g, lead_c = den.terms[0]
    rem = num
    quot = {}
    while not rem.is_zero():
        if len(quot) >= max_terms:
            return None
        g0, c0 = rem.terms[0]
        qg = grp.raw_sub(g0, lead_g)
        qc = f.mul(c0, f.inv(lead_c))
        quot[qg] = qc
        rem = s_add(rem, s_neg(s_mul(Series(grp, f, ((qg, qc),)), den)))
    return Series(grp, f, _sorted_terms(grp, quot))


def _normalized(x: "RingElement") -> "RingElement":
    """Cancel the denominator whenever the quotient is exactly a polynomial."""
    if x.num.is_zero():
        return RingElement(x.num, s_one(x.num.group, x.num.field))
    if x.den == s_one(x.num.group, x.num.field):
        return x
    if len(x.den.terms) == 1:
        g, c = x.den.terms[0]
        f = x.num.field
        inv = f.inv(c)
        grp = x.num.group
        num = Series(
            grp,
            f,
            tuple((grp.sub(e, g), f.mul(cc, inv)) for e, cc in x.num.terms),
        )
        return RingElement(num, s_one(grp, f))
    if len(x.num.terms) + len(x.den.terms) <= 160:
        quot = _poly_div_exact(x.num, x.den)
        if quot is not None:
            return RingElement(quot, s_one(x.num.group, x.num.field))
    return x


@dataclass(frozen=True, eq=False)
class RingElement:
    """A quotient num/den of series; standard elements keep v(den) = 0."""

    num: Series
    den: Series

    @property
    def group(self):
        return self.num.group

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        if self.group != other.group or self.field != other.field:
            return False
        return s_add(s_mul(self.num, other.den), s_neg(s_mul(other.num, self.den))).is_zero()

    __hash__ = None

    def __repr__(self):
        return "RingElement(%s)" % render_ring_element(self)


def element(group, field, num_map, den_map=None) -> RingElement:
    num = series(group, field, num_map)
    den = s_one(group, field) if den_map is None else series(group, field, den_map)
    return _standard(RingElement(num, den))


def _standard(x: RingElement) -> RingElement:
    if x.den.is_zero():
        raise DivisionByZero("zero denominator")
    v = x.den.valuation()
    if x.group.cmp(v, x.group.zero()) != EQUAL:
        raise DenominatorNotUnit("denominator has valuation %s" % x.group.render(v))
    return x


def const(group, field, c) -> RingElement:
    return RingElement(s_monomial(group, field, group.zero(), c), s_one(group, field))


def monomial(group, field, g, c=1) -> RingElement:
    return RingElement(s_monomial(group, field, g, c), s_one(group, field))


def zero_elem(group, field) -> RingElement:
    return RingElement(s_zero(group, field), s_one(group, field))


def one_elem(group, field) -> RingElement:
    return const(group, field, 1)


def r_add(a, b) -> RingElement:
    _match(a, b)
    if a.den == b.den:
        return _normalized(RingElement(s_add(a.num, b.num), a.den))
    # cancel a divisible denominator: a/w + b/(w*h) = (a*h + b)/(w*h)
    if len(a.den.terms) < len(b.den.terms):
        h = _poly_div_exact(b.den, a.den, max_terms=32)
        if h is not None:
            return _normalized(RingElement(s_add(s_mul(a.num, h), b.num), b.den))
    elif len(b.den.terms) < len(a.den.terms):
        h = _poly_div_exact(a.den, b.den, max_terms=32)
        if h is not None:
            return _normalized(RingElement(s_add(a.num, s_mul(b.num, h)), a.den))
    return _normalized(
        RingElement(s_add(s_mul(a.num, b.den), s_mul(b.num, a.den)), s_mul(a.den, b.den))
    )


def r_neg(a) -> RingElement:
    return RingElement(s_neg(a.num), a.den)


def r_sub(a, b) -> RingElement:
    return r_add(a, r_neg(b))


def r_mul(a, b) -> RingElement:
    _match(a, b)
    return _normalized(RingElement(s_mul(a.num, b.num), s_mul(a.den, b.den)))


def _match(a, b):
    if a.group != b.group:
        raise GroupMismatch("ring elements over different groups")
    if a.field != b.field:
        raise GroupMismatch("ring elements over different coefficient fields")


def valuation(a: RingElement):
    """min support of the numerator minus that of the denominator."""
    if a.is_zero():
        return INFINITY
    g = a.group
    return g.raw_sub(a.num.valuation(), a.den.valuation())


def divides(a, b) -> bool:
    """Total divisibility: v(a) <= v(b), or b = 0."""
    _match(a, b)
    if b.is_zero():
        return True
    if a.is_zero():
        return False
    return a.group.cmp(valuation(a), valuation(b)) <= EQUAL


def divide_exact(b, a) -> RingElement:
    """b / a with the denominator renormalized to valuation zero."""
    _match(a, b)
    if a.is_zero():
        raise DivisionByZero("division by zero")
    if b.is_zero():
        return zero_elem(b.group, b.field)
    if not divides(a, b):
        raise NotDivisible(
            "valuation %s exceeds %s"
            % (b.group.render(valuation(a)), b.group.render(valuation(b)))
        )
    g = b.group
    shift = g.neg(valuation(a))
    num = s_shift(s_mul(b.num, a.den), shift)
    den = s_shift(s_mul(b.den, a.num), shift)
    return _normalized(RingElement(num, den))


# ---------------------------------------------------------------------------
# parsing and rendering


def render_series(s: Series) -> str:
    if s.is_zero():
        return "0"
    parts = []
    grp, f = s.group, s.field
    for g, c in s.terms:
        if grp.is_zero(g):
            parts.append(f.render(c))
            continue
        mono = "t^{%s}" % grp.render(g)
        one = f.one()
        if c == one:
            parts.append(mono)
        elif f.is_zero(f.add(c, one)):
            parts.append("-" + mono)
        else:
            parts.append("%s*%s" % (f.render(c), mono))
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def render_ring_element(x: RingElement) -> str:
    den_is_one = x.den == s_one(x.group, x.field)
    if den_is_one:
        return render_series(x.num)
    return "(%s)/(%s)" % (render_series(x.num), render_series(x.den))


def _parse_series(group, field, cur) -> Series:
    acc = s_zero(group, field)
    sign = -1 if cur.eat("-") else 1
    while True:
        term = _parse_term(group, field, cur, sign)
        acc = s_add(acc, term)
        if cur.eat("+"):
            sign = 1
        elif cur.eat("-"):
            sign = -1
        else:
            return acc


def _parse_term(group, field, cur, sign) -> Series:
    coeff = cur.match_fraction()
    if coeff is not None:
        coeff = field.coerce(coeff)
        if not cur.eat("*"):
            return s_monomial(group, field, group.zero(), field.mul(field.coerce(sign), coeff))
    else:
        coeff = field.one()
    name = cur.match_name()
    if name != "t":
        raise cur.error("expected the generator 't'")
    if cur.eat("^"):
        cur.expect("{")
        raw = parse_element_text(cur)
        cur.expect("}")
        g = group.validate(raw)
    else:
        g = group.validate(Fraction(1))
    if group.cmp(g, group.zero()) == -1:
        raise cur.error("exponents must be >= 0")
    return s_monomial(group, field, g, field.mul(field.coerce(sign), coeff))


def parse_element(group, text, field=QQ) -> RingElement:
    """Parse `<series>` or `(<series>)/(<series>)`; the denominator must be a unit."""
    cur = TextCursor(text)
    x = parse_element_from(group, cur, field)
    cur.expect_end()
    return _standard(x)


def parse_element_from(group, cur, field=QQ) -> RingElement:
    if cur.peek() == "(":
        cur.expect("(")
        num = _parse_series(group, field, cur)
        cur.expect(")")
        cur.expect("/")
        cur.expect("(")
        den = _parse_series(group, field, cur)
        cur.expect(")")
        if den.is_zero():
            raise cur.error("zero denominator")
        return RingElement(num, den)
    return RingElement(_parse_series(group, field, cur), s_one(group, field))


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, eq=False)
class ValMatrix:
    group: Group
    field: object
    rows: tuple  # tuple of tuples of RingElement

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i, j):
        return self.rows[i][j]


def matrix(group, field, rows) -> ValMatrix:
    rows = tuple(tuple(r) for r in rows)
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        for r in rows:
            for x in r:
                if x.group != group or x.field != field:
                    raise GroupMismatch("matrix entry over a different group/field")
    return ValMatrix(group, field, rows)


def identity_matrix(group, field, n) -> ValMatrix:
    one, zero = one_elem(group, field), zero_elem(group, field)
    return matrix(group, field, [[one if i == j else zero for j in range(n)] for i in range(n)])


def mat_mul(a: ValMatrix, b: ValMatrix) -> ValMatrix:
    if a.ncols != b.nrows:
        raise DimensionMismatch("cannot multiply %dx%d by %dx%d" % (a.nrows, a.ncols, b.nrows, b.ncols))
    rows = []
    for i in range(a.nrows):
        row = []
        for j in range(b.ncols):
            acc = zero_elem(a.group, a.field)
            for k in range(a.ncols):
                acc = r_add(acc, r_mul(a.entry(i, k), b.entry(k, j)))
            row.append(acc)
        rows.append(row)
    return matrix(a.group, a.field, rows)


def mats_equal(a: ValMatrix, b: ValMatrix) -> bool:
    if (a.nrows, a.ncols) != (b.nrows, b.ncols):
        return False
    return all(a.entry(i, j) == b.entry(i, j) for i in range(a.nrows) for j in range(a.ncols))


# ---------------------------------------------------------------------------
# Smith normal form
#
# Pivot: the entry of minimal valuation (row-major tie break).  Over a
# valuation domain the pivot divides every remaining entry, so one clearing
# pass per pivot suffices and the diagonal valuations come out weakly
# increasing, each entry dividing the next.
#
# Clearing an entry e against the pivot p = t^v * unit is performed as the
# elementary pair "scale the target line by the pivot's unit, then subtract
# the monomial quotient shift(e, -v) times the pivot line":
#
#     line_i := unit * line_i - shift(e, -v) * line_s
#
# which equals unit * (line_i - (e/p) * line_s).  This keeps every
# intermediate entry a plain polynomial (the quotient by a monomial is a
# support shift), avoiding the representation swell of iterated unit
# denominators; pivot choices and diagonal valuations agree with the direct
# exact-division formulation because the two differ by unit scalings only.


def _shift_elem(x: RingElement, g) -> RingElement:
    return RingElement(s_shift(x.num, g), x.den)


def _content_scaled(field, line):
    """Divide a polynomial line by its rational coefficient content."""
    if not isinstance(field, RationalField):
        return line
    from math import gcd

    num_gcd, den_lcm = 0, 1
    for x in line:
        for _, c in x.num.terms:
            num_gcd = gcd(num_gcd, c.numerator)
            den_lcm = den_lcm // gcd(den_lcm, c.denominator) * c.denominator
    if num_gcd in (0, den_lcm):
        return line
    scale = Fraction(den_lcm, num_gcd)
    out = []
    for x in line:
        out.append(
            RingElement(
                Series(x.num.group, field, tuple((g, c * scale) for g, c in x.num.terms)),
                x.den,
            )
        )
    return out


def snf(a: ValMatrix):
    """Returns (U, D, V, diag_values) with U*A*V = D, U and V invertible."""
    group, field = a.group, a.field
    m, n = a.nrows, a.ncols
    d = [list(row) for row in a.rows]
    u = [list(row) for row in identity_matrix(group, field, m).rows]
    v = [list(row) for row in identity_matrix(group, field, n).rows]

    one = one_elem(group, field)

    def exact_quotient(entry, pivot):
        # entry/pivot as a polynomial when possible: no unit scaling needed
        quot = _poly_div_exact(entry.num, pivot.num, max_terms=24)
        if quot is not None:
            return one, RingElement(quot, entry.den)
        neg_v = group.raw_neg(valuation(pivot))
        return _shift_elem(pivot, neg_v), _shift_elem(entry, neg_v)

    def row_op(target, src, unit, q):  # row_target := unit*row_target - q*row_src
        for j in range(n):
            d[target][j] = r_sub(r_mul(unit, d[target][j]), r_mul(q, d[src][j]))
        for j in range(m):
            u[target][j] = r_sub(r_mul(unit, u[target][j]), r_mul(q, u[src][j]))
        scaled = _content_scaled(field, d[target] + u[target])
        d[target], u[target] = scaled[:n], scaled[n:]

    def col_op(target, src, q):  # col_target -= q * col_src
        for i in range(m):
            if not d[i][src].is_zero():
                d[i][target] = r_sub(d[i][target], r_mul(q, d[i][src]))
        for i in range(n):
            if not v[i][src].is_zero():
                v[i][target] = r_sub(v[i][target], r_mul(q, v[i][src]))

    for s in range(min(m, n)):
        pivot = None
        for i in range(s, m):
            for j in range(s, n):
                if d[i][j].is_zero():
                    continue
                if pivot is None or group.raw_cmp(valuation(d[i][j]), valuation(d[pivot[0]][pivot[1]])) == -1:
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != s:
            d[s], d[pi] = d[pi], d[s]
            u[s], u[pi] = u[pi], u[s]
        if pj != s:
            for row in d:
                row[s], row[pj] = row[pj], row[s]
            for row in v:
                row[s], row[pj] = row[pj], row[s]
        for i in range(s + 1, m):
            if not d[i][s].is_zero():
                unit, q = exact_quotient(d[i][s], d[s][s])
                row_op(i, s, unit, q)
        # column s below the pivot is clear now, so subtracting the exact
        # R-quotient of the pivot column touches only row s (and V)
        for j in range(s + 1, n):
            if not d[s][j].is_zero():
                col_op(j, s, divide_exact(d[s][j], d[s][s]))

    dm = matrix(group, field, d)
    um = matrix(group, field, u)
    vm = matrix(group, field, v)
    diag = [valuation(d[i][i]) for i in range(min(m, n))]
    return um, dm, vm, diag


def decompose_fp_module(a: ValMatrix):
    """Cyclic invariants of the module presented by A (rows = generators,
    columns = relations): diagonal entries of the Smith form, padded with
    zeros for free summands; unit entries are dropped."""
    _, dm, _, _ = snf(a)
    group, field = a.group, a.field
    out = []
    for i in range(a.nrows):
        if i < min(a.nrows, a.ncols):
            entry = dm.entry(i, i)
            if entry.is_zero():
                out.append(zero_elem(group, field))
            elif group.cmp(valuation(entry), group.zero()) == EQUAL:
                continue  # unit relation: zero summand
            else:
                out.append(entry)
        else:
            out.append(zero_elem(group, field))
    return out


# ---------------------------------------------------------------------------
# component rings R_q / j
#
# A component is addressed by the convex subgroups H_q (of the upper prime)
# and H_j (of the lower, idempotent prime).  A fraction is legal when its
# valuation class modulo H_q is nonnegative, zero when the valuation lies
# strictly above H_j, and a unit when the valuation lies in H_q.


@dataclass(frozen=True)
class Component:
    group: Group
    hq: object  # ConvexRef of the upper prime's convex subgroup
    hj: object  # ConvexRef of the lower prime's convex subgroup

    def is_zero(self, x: RingElement) -> bool:
        if x.is_zero():
            return True
        return self.group.class_cmp(valuation(x), self.hj) == GREATER

    def is_legal(self, x: RingElement) -> bool:
        if x.is_zero():
            return True
        return self.group.class_cmp(valuation(x), self.hq) >= EQUAL or self.is_zero(x)

    def require_legal(self, x):
        if not self.is_legal(x):
            raise UnsupportedComponent(
                "value %s is negative in the component" % self.group.render(valuation(x))
            )
        return x

    def eq(self, a, b) -> bool:
        return self.is_zero(r_sub(a, b))

    def divide(self, a, b) -> RingElement:
        """a / b inside the component; b must be nonzero there."""
        if self.is_zero(b):
            raise DivisionByZero("division by a component zero")
        if self.is_zero(a):
            return zero_elem(self.group, a.field)
        q = _normalized(RingElement(s_mul(a.num, b.den), s_mul(a.den, b.num)))
        if self.group.class_cmp(valuation(q), self.hq) < EQUAL:
            raise NotDivisible("quotient not in the component ring")
        return q


def spectrum_component(spec, lower, upper) -> Component:
    """The component ring of an interval [lower, upper] of a group spectrum."""
    return Component(spec.group, spec.convex_ref(upper), spec.convex_ref(lower))


# ---------------------------------------------------------------------------
# Mazet presentations


def _solve_diagonal_row(comp, dm, rhs):
    """X' with X' * D = rhs (1 x n); returns entries or None."""
    m, n = dm.nrows, dm.ncols
    xs = [zero_elem(dm.group, dm.field) for _ in range(m)]
    for c in range(n):
        dcc = dm.entry(c, c) if c < m else zero_elem(dm.group, dm.field)
        if comp.is_zero(dcc):
            if not comp.is_zero(rhs[c]):
                return None
        else:
            try:
                xs[c] = comp.divide(rhs[c], dcc)
            except NotDivisible:
                return None
    return xs


def _solve_diagonal_col(comp, dm, rhs):
    """Z' with D * Z' = rhs (m x 1); returns entries or None."""
    m, n = dm.nrows, dm.ncols
    zs = [zero_elem(dm.group, dm.field) for _ in range(n)]
    for r in range(m):
        drr = dm.entry(r, r) if r < n else zero_elem(dm.group, dm.field)
        if comp.is_zero(drr):
            if not comp.is_zero(rhs[r]):
                return None
        else:
            try:
                zs[r] = comp.divide(rhs[r], drr)
            except NotDivisible:
                return None
    return zs


def verify_mazet(spec, chain, s_components, p, y, q) -> bool:
    """Decide whether (P, Y, Q) is a Mazet presentation of s over the
    localization classified by the chain.

    Componentwise: X with X*Y = P and Z with Y*Z = Q must exist over the
    component ring, and then P*Z must reproduce the component of s.  The
    value P*Z does not depend on the choice of Z, since any two solutions
    differ by the kernel of Y, which X*Y = P annihilates.
    """
    from .smashing import classify_chain

    descriptor = classify_chain(spec, chain)
    if descriptor.has_family:
        raise UnsupportedComponent("Mazet verification needs a finite component list")
    components = [c for c in descriptor.components]
    if p.nrows != 1 or q.ncols != 1:
        raise DimensionMismatch("P must be a row and Q a column")
    m, n = y.nrows, y.ncols
    if p.ncols != n or q.nrows != m:
        raise DimensionMismatch("P is 1x%d and Q %dx1 against Y %dx%d" % (p.ncols, q.nrows, m, n))
    if len(s_components) != len(components):
        raise DimensionMismatch(
            "s has %d components, the localization %d" % (len(s_components), len(components))
        )
    um, dm, vm, _ = snf(y)
    for (_, lower, upper), s_val in zip(components, s_components):
        comp = spectrum_component(spec, lower, upper)
        comp.require_legal(s_val)
        p_prime = mat_mul(p, vm).rows[0]
        if _solve_diagonal_row(comp, dm, list(p_prime)) is None:
            return False
        q_prime = [row[0] for row in mat_mul(um, q).rows]
        z_prime = _solve_diagonal_col(comp, dm, q_prime)
        if z_prime is None:
            return False
        z = mat_mul(vm, matrix(y.group, y.field, [[e] for e in z_prime]))
        value = zero_elem(y.group, y.field)
        for c in range(n):
            value = r_add(value, r_mul(p.entry(0, c), z.entry(c, 0)))
        if not comp.eq(value, s_val):
            return False
    return True


def mazet_for_localization(spec, r, sigma, target_prime):
    """The canonical presentation ([r], [sigma], [1]) of r/sigma in R_p."""
    group = spec.group
    if group is None:
        raise UnsupportedComponent("need a spectrum built from a value group")
    if sigma.is_zero() or cut_contains(
        prime_cut(group, spec.convex_ref(target_prime)), valuation(sigma)
    ):
        raise SigmaInPrime("denominator lies in the target prime")
    field = r.field
    p = matrix(group, field, [[r]])
    y = matrix(group, field, [[sigma]])
    q = matrix(group, field, [[one_elem(group, field)]])
    return p, y, q


# ---------------------------------------------------------------------------
# locally constant decomposition


def locally_constant_decomposition(spec, chain, s_components):
    """Coarsest partition of the components into consecutive runs whose values
    come from a single element of the covering localization-quotient.

    A run [a..b] is consistent when the fraction representing the a-th value
    lies in R_{q_b}/j_a and maps onto every component value in the run; runs
    are extended greedily, which yields the coarsest (irredundant) partition
    because consistency is inherited by sub-runs.
    """
    from .smashing import classify_chain

    descriptor = classify_chain(spec, chain)
    if descriptor.has_family:
        raise UnsupportedComponent("decomposition needs a finite component list")
    components = list(descriptor.components)
    if len(s_components) != len(components):
        raise DimensionMismatch(
            "s has %d components, the localization %d" % (len(s_components), len(components))
        )
    comps = [spectrum_component(spec, lo, up) for (_, lo, up) in components]
    for c, s in zip(comps, s_components):
        c.require_legal(s)
    runs = []
    idx = 0
    while idx < len(components):
        rep = s_components[idx]
        start_hj = comps[idx].hj
        end = idx
        for nxt in range(idx + 1, len(components)):
            extended = Component(spec.group, comps[nxt].hq, start_hj)
            if not extended.is_legal(rep):
                break
            if not comps[nxt].eq(rep, s_components[nxt]):
                break
            end = nxt
        runs.append(((idx, end), rep))
        idx = end + 1
    return runs


# ---------------------------------------------------------------------------
# matrix files


def parse_field(text):
    text = text.strip()
    if text in ("Q", "q"):
        return QQ
    if text.upper().startswith("GF(") and text.endswith(")"):
        return PrimeField(int(text[3:-1]))
    raise ParseError("unknown field %r" % text)


def parse_matrix_file(text):
    """First line `group: <descriptor>`, optional `field: <field>`, then one
    row per line with `;`-separated entries."""
    from .groups import build_group, parse_descriptor

    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("group:"):
        raise ParseError("matrix file must start with 'group: <descriptor>'")
    group = build_group(parse_descriptor(lines[0].split(":", 1)[1].strip()))
    field = QQ
    rows_start = 1
    if len(lines) > 1 and lines[1].startswith("field:"):
        field = parse_field(lines[1].split(":", 1)[1])
        rows_start = 2
    rows = []
    for ln in lines[rows_start:]:
        rows.append([parse_element(group, cell, field) for cell in ln.split(";")])
    if not rows:
        raise ParseError("matrix file has no rows")
    return matrix(group, field, rows)
