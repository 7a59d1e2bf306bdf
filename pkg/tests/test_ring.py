import random
from fractions import Fraction as F

import pytest

from smashlab.errors import (
    DenominatorNotUnit,
    DimensionMismatch,
    DivisionByZero,
    NotDivisible,
    ParseError,
    SigmaInPrime,
)
from smashlab.groups import INT, RAT, build_group, antilex_omega, int_loc, lex
from smashlab.ring import (
    INFINITY,
    PrimeField,
    QQ,
    RingElement,
    decompose_fp_module,
    divide_exact,
    divides,
    identity_matrix,
    locally_constant_decomposition,
    mat_mul,
    matrix,
    mats_equal,
    mazet_for_localization,
    one_elem,
    parse_element,
    parse_matrix_file,
    r_add,
    r_mul,
    r_neg,
    r_sub,
    render_ring_element,
    snf,
    valuation,
    verify_mazet,
    zero_elem,
)
from smashlab.smashing import parse_chain
from smashlab.spectrum import PrimeRef, spectrum_from_group

from helpers import sample_ring_element

GI = build_group(INT)
G2 = build_group(int_loc(2))
GROUPS = [INT, RAT, int_loc(2), lex(INT, INT), lex(INT, antilex_omega(RAT))]


def elt(text, group=GI, field=QQ):
    return parse_element(group, text, field)


def test_parse_and_multiply():
    assert r_mul(elt("t^{1} + t^{2}"), elt("t^{3}")) == elt("t^{4} + t^{5}")
    assert r_mul(elt("t^{1/2}", G2), elt("t^{1/2}", G2)) == elt("t^{1}", G2)
    with pytest.raises(DenominatorNotUnit):
        elt("(t^{1})/(t^{1})")
    with pytest.raises(ParseError):
        elt("t^{-1}")
    assert elt("3*t^{1/2} + t^{2} - 1/4*t^{3}", G2) == r_add(
        r_add(elt("3*t^{1/2}", G2), elt("t^{2}", G2)), r_neg(elt("1/4*t^{3}", G2))
    )


def test_render_roundtrip():
    rng = random.Random(2)
    for desc in GROUPS:
        g = build_group(desc)
        for _ in range(25):
            x = sample_ring_element(g, rng)
            assert parse_element(g, render_ring_element(x)) == x


def test_valuation_examples():
    assert valuation(elt("t^{2} + t^{5}")) == F(2)
    assert valuation(elt("(t^{3})/(1 + t^{1})")) == F(3)
    assert valuation(zero_elem(GI, QQ)) is INFINITY


def test_divides_examples():
    t = elt("t^{1}")
    assert divides(t, elt("t^{2}+t^{3}"))
    assert divide_exact(elt("t^{2}+t^{3}"), t) == elt("t^{1}+t^{2}")
    assert not divides(elt("t^{2}"), t)
    u = elt("1 + t^{1}")
    inv = divide_exact(one_elem(GI, QQ), u)
    assert r_mul(inv, u) == one_elem(GI, QQ)
    with pytest.raises(NotDivisible):
        divide_exact(t, elt("t^{2}"))
    with pytest.raises(DivisionByZero):
        divide_exact(t, zero_elem(GI, QQ))


@pytest.mark.parametrize("desc", GROUPS)
def test_ring_axioms(desc):
    g = build_group(desc)
    rng = random.Random(17)
    one = one_elem(g, QQ)
    for _ in range(30):
        a = sample_ring_element(g, rng)
        b = sample_ring_element(g, rng)
        c = sample_ring_element(g, rng)
        assert r_add(a, b) == r_add(b, a)
        assert r_mul(a, b) == r_mul(b, a)
        assert r_add(r_add(a, b), c) == r_add(a, r_add(b, c))
        assert r_mul(r_mul(a, b), c) == r_mul(a, r_mul(b, c))
        assert r_mul(a, r_add(b, c)) == r_add(r_mul(a, b), r_mul(a, c))
        assert r_mul(a, one) == a
        assert r_add(a, r_neg(a)).is_zero()


@pytest.mark.parametrize("desc", GROUPS)
def test_valuation_laws(desc):
    g = build_group(desc)
    rng = random.Random(19)
    for _ in range(40):
        a = sample_ring_element(g, rng, nonzero=True)
        b = sample_ring_element(g, rng, nonzero=True)
        assert valuation(r_mul(a, b)) == g.add(valuation(a), valuation(b))
        s = r_add(a, b)
        if not s.is_zero():
            lo = valuation(a) if g.cmp(valuation(a), valuation(b)) <= 0 else valuation(b)
            assert g.cmp(valuation(s), lo) >= 0
            if g.cmp(valuation(a), valuation(b)) != 0:
                assert valuation(s) == lo
        # divisibility is total
        assert divides(a, b) or divides(b, a)


def test_snf_examples():
    t = elt("t^{1}")
    z = zero_elem(GI, QQ)
    m = matrix(GI, QQ, [[t, t], [t, t]])
    u, d, v, diag = snf(m)
    assert mats_equal(mat_mul(mat_mul(u, m), v), d)
    assert diag == [F(1), INFINITY]
    assert d.entry(0, 1).is_zero() and d.entry(1, 0).is_zero() and d.entry(1, 1).is_zero()

    m2 = matrix(GI, QQ, [[elt("t^{2}"), t], [elt("t^{3}"), elt("t^{5}")]])
    u, d, v, diag = snf(m2)
    assert diag == [F(1), F(3)]
    assert mats_equal(mat_mul(mat_mul(u, m2), v), d)
    # the second invariant is t^3 times a unit: t^3 - t^6 = t^3 (1 - t^3)
    assert d.entry(1, 1) == elt("t^{3} - t^{6}")

    u, d, v, diag = snf(matrix(GI, QQ, [[z]]))
    assert diag == [INFINITY] and d.entry(0, 0).is_zero()


def _random_matrix(g, rng, field=QQ, max_dim=5):
    m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return matrix(
        g, field, [[sample_ring_element(g, rng, field) for _ in range(n)] for _ in range(m)]
    )


def _random_elementary(g, rng, field, n):
    rows = [list(r) for r in identity_matrix(g, field, n).rows]
    kind = rng.randrange(3)
    i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
    if kind == 0 and n > 1:
        rows[i], rows[j] = rows[j], rows[i]
    elif kind == 1 and n > 1:
        rows[i][j] = sample_ring_element(g, rng, field)
    else:
        unit = sample_ring_element(g, rng, field, nonzero=True)
        while not (valuation(unit) == g.zero()):
            unit = r_add(unit, one_elem(g, field))
        rows[i][i] = unit
    return matrix(g, field, rows)


def _diag_key(g, diag):
    return sorted(
        ((1, None) if v is INFINITY else (0, tuple(str(v).split()))) for v in diag
    )


def test_snf_random_properties():
    rng = random.Random(29)
    for desc in GROUPS:
        g = build_group(desc)
        for _ in range(12):
            a = _random_matrix(g, rng, max_dim=4)
            u, d, v, diag = snf(a)
            assert mats_equal(mat_mul(mat_mul(u, a), v), d)
            for i in range(min(a.nrows, a.ncols) - 1):
                assert divides(d.entry(i, i), d.entry(i + 1, i + 1))
            u0 = _random_elementary(g, rng, QQ, a.nrows)
            v0 = _random_elementary(g, rng, QQ, a.ncols)
            _, _, _, diag2 = snf(mat_mul(mat_mul(u0, a), v0))
            assert _diag_key(g, diag) == _diag_key(g, diag2)


def test_snf_field_independence():
    rng = random.Random(37)
    gf = PrimeField(5)
    for _ in range(10):
        rows = [
            [
                {F(rng.randint(0, 3)): rng.choice([1, 2, 3, 4]) for _ in range(rng.randint(1, 2))}
                for _ in range(2)
            ]
            for _ in range(2)
        ]
        from smashlab.ring import element

        a_q = matrix(GI, QQ, [[element(GI, QQ, cell) for cell in row] for row in rows])
        a_p = matrix(GI, gf, [[element(GI, gf, cell) for cell in row] for row in rows])
        assert snf(a_q)[3] == snf(a_p)[3]


def test_decompose_examples():
    t = elt("t^{1}")
    z = zero_elem(GI, QQ)
    inv = decompose_fp_module(matrix(GI, QQ, [[t, z], [z, z]]))
    assert [render_ring_element(x) for x in inv] == ["t^{1}", "0"]
    assert decompose_fp_module(identity_matrix(GI, QQ, 2)) == []
    inv = decompose_fp_module(matrix(GI, QQ, [[elt("t^{2}")]]))
    assert [render_ring_element(x) for x in inv] == ["t^{2}"]


def test_verify_mazet_examples():
    spec = spectrum_from_group(GI)
    chain = parse_chain(spec, "{[p0,p0]}")  # R -> Q
    one = one_elem(GI, QQ)
    t = elt("t^{1}")
    s = RingElement(one.num, t.num)  # 1/t in Q
    p, y, q = mazet_for_localization(spec, one, t, PrimeRef(0))
    assert verify_mazet(spec, chain, [s], p, y, q)
    # image elements: s = f(r) with P=[r], Y=[1], Q=[1]
    r = elt("t^{2} + t^{3}")
    p2, y2, q2 = matrix(GI, QQ, [[r]]), matrix(GI, QQ, [[one]]), matrix(GI, QQ, [[one]])
    assert verify_mazet(spec, chain, [r], p2, y2, q2)
    # Y = [t^2] forces Z = 1/t^2 and P*Z = 1/t^2 != 1/t
    y3 = matrix(GI, QQ, [[elt("t^{2}")]])
    assert not verify_mazet(spec, chain, [s], matrix(GI, QQ, [[one]]), y3, q2)


def test_mazet_guards():
    spec = spectrum_from_group(GI)
    one = one_elem(GI, QQ)
    t = elt("t^{1}")
    with pytest.raises(SigmaInPrime):
        mazet_for_localization(spec, one, t, PrimeRef(1))
    p, y, q = mazet_for_localization(spec, elt("t^{2}"), one, PrimeRef(1))
    chain_r = parse_chain(spec, "{[p0,p1]}")
    assert verify_mazet(spec, chain_r, [elt("t^{2}")], p, y, q)
    with pytest.raises(DimensionMismatch):
        verify_mazet(spec, chain_r, [one, one], p, y, q)
    with pytest.raises(DimensionMismatch):
        verify_mazet(spec, chain_r, [one], p, matrix(GI, QQ, [[one, t]]), q)


def test_locally_constant_examples():
    spec = spectrum_from_group(G2)
    chain = parse_chain(spec, "{[p0,p0],[p1,p1]}")  # Q x k
    r = parse_element(G2, "1 + t^{1/2}")
    runs = locally_constant_decomposition(spec, chain, [r, r])
    assert [span for span, _ in runs] == [(0, 1)]
    zero, one = zero_elem(G2, QQ), one_elem(G2, QQ)
    runs = locally_constant_decomposition(spec, chain, [zero, one])
    assert [span for span, _ in runs] == [(0, 0), (1, 1)]
    single = parse_chain(spec, "{[p1,p1]}")
    runs = locally_constant_decomposition(spec, single, [one])
    assert [span for span, _ in runs] == [(0, 0)]


def test_matrix_file():
    text = "group: Z\nt^{2}; t^{1}\nt^{3}; t^{5}\n"
    m = parse_matrix_file(text)
    assert m.nrows == 2 and m.ncols == 2
    assert snf(m)[3] == [F(1), F(3)]
    text_gf = "group: Z\nfield: GF(5)\n2; 1\n"
    m2 = parse_matrix_file(text_gf)
    assert m2.field == PrimeField(5)
    with pytest.raises(ParseError):
        parse_matrix_file("t^{1}; t^{2}\n")
