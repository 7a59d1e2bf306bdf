import pytest

from smashlab.errors import InfiniteSpectrum, InvalidChain, NotFlat, UnknownPrime
from smashlab.groups import INT, RAT, build_group, antilex_omega, int_loc, lex
from smashlab.smashing import (
    FamilyItem,
    IntervalItem,
    ThomasonSet,
    chain_of,
    chain_to_thomason,
    classify_chain,
    enumerate_smashing,
    finite_stage,
    is_flat,
    parse_chain,
    render_chain,
    render_thomason,
    ring_text,
    tc_holds,
    tc_holds_family,
    thomason_sets,
    validate_chain,
)
from smashlab.spectrum import PrimeRef, spectrum_from_flags, spectrum_from_group

from helpers import all_flag_patterns, chains_as_sets, oracle_chains

PUISEUX = spectrum_from_flags([True, True])
DVR = spectrum_from_flags([True, False])
NC = spectrum_from_group(build_group(lex(INT, antilex_omega(RAT))))


def test_enumerate_counts():
    assert len(enumerate_smashing(PUISEUX)) == 5
    assert len(enumerate_smashing(DVR)) == 3
    assert len(enumerate_smashing(spectrum_from_flags([True, True, True]))) == 13
    assert len(enumerate_smashing(spectrum_from_flags([True, False, False]))) == 4


def test_enumerate_matches_oracle_small():
    for n in range(1, 5):
        for flags in all_flag_patterns(n):
            spec = spectrum_from_flags(flags)
            assert chains_as_sets(spec, enumerate_smashing(spec)) == oracle_chains(flags)


def test_enumerate_canonical_order():
    texts = [render_chain(PUISEUX, c) for c in enumerate_smashing(PUISEUX)]
    assert texts == ["{}", "{[p0,p0]}", "{[p0,p0],[p1,p1]}", "{[p0,p1]}", "{[p1,p1]}"]


def test_enumerate_needs_finite():
    with pytest.raises(InfiniteSpectrum):
        enumerate_smashing(NC)


def test_validate_examples():
    good = parse_chain(NC, "{[p0,p1],[f2_j,f2_j]*}")
    assert validate_chain(NC, good).ok
    bad = parse_chain(NC, "{[f2_j,f2_j]*}")
    res = validate_chain(NC, bad)
    assert not res.ok and res.kind == "C1"
    res = validate_chain(PUISEUX, parse_chain(PUISEUX, "{[p0,p1],[p1,p1]}"))
    assert not res.ok and res.kind == "Order"
    res = validate_chain(DVR, parse_chain(DVR, "{[p1,p1]}"))
    assert not res.ok and res.kind == "NotAdmissible"


def test_validate_family_shapes():
    # a wrong cap below a descending family is a C1 violation
    res = validate_chain(NC, chain_of(NC, [IntervalItem(PrimeRef(0), PrimeRef(0)), FamilyItem(2)]))
    assert not res.ok and res.kind == "C1"
    # an interval overlapping the family is an order violation
    res = validate_chain(
        NC,
        chain_of(NC, [IntervalItem(PrimeRef(0), PrimeRef(2, 3)), FamilyItem(2)]),
    )
    assert not res.ok and res.kind == "Order"
    # finitely many family members used as plain intervals are fine
    fine = chain_of(
        NC,
        [
            IntervalItem(PrimeRef(0), PrimeRef(1)),
            IntervalItem(PrimeRef(2, 2), PrimeRef(2, 2)),
            IntervalItem(PrimeRef(3), PrimeRef(3)),
        ],
    )
    assert validate_chain(NC, fine).ok
    # an ascending family needs a cap starting at its union
    from smashlab.spectrum import OMEGA_ASC, SINGLE, spectrum_from_slots

    asc = spectrum_from_slots([(SINGLE, True), (OMEGA_ASC, True), (SINGLE, True)])
    res = validate_chain(asc, chain_of(asc, [FamilyItem(1)]))
    assert not res.ok and res.kind == "C2"
    good = chain_of(asc, [FamilyItem(1), IntervalItem(PrimeRef(2), PrimeRef(2))])
    assert validate_chain(asc, good).ok


def test_unknown_prime():
    with pytest.raises(UnknownPrime):
        validate_chain(DVR, chain_of(DVR, [IntervalItem(PrimeRef(0), PrimeRef(7))]))
    with pytest.raises(UnknownPrime):
        chain_of(DVR, [FamilyItem(1)])


def test_classify_examples():
    both = parse_chain(PUISEUX, "{[p0,p0],[p1,p1]}")
    d = classify_chain(PUISEUX, both)
    assert ring_text(PUISEUX, d) == "Q x k"
    assert d.kernel == PrimeRef(0) and not d.is_flat
    empty = parse_chain(PUISEUX, "{}")
    dz = classify_chain(PUISEUX, empty)
    assert dz.zero_ring and ring_text(PUISEUX, dz) == "0" and dz.kernel is None
    dq = classify_chain(DVR, parse_chain(DVR, "{[p0,p0]}"))
    assert ring_text(DVR, dq) == "Q"
    dr = classify_chain(DVR, parse_chain(DVR, "{[p0,p1]}"))
    assert ring_text(DVR, dr) == "R"
    with pytest.raises(InvalidChain):
        classify_chain(PUISEUX, parse_chain(PUISEUX, "{[p0,p1],[p1,p1]}"))


def test_flat_examples():
    assert is_flat(PUISEUX, parse_chain(PUISEUX, "{[p0,p1]}"))
    assert not is_flat(PUISEUX, parse_chain(PUISEUX, "{[p1,p1]}"))
    assert is_flat(PUISEUX, parse_chain(PUISEUX, "{}"))
    flats = [c for c in enumerate_smashing(PUISEUX) if is_flat(PUISEUX, c)]
    assert len(flats) == 3


def test_tc_examples():
    assert tc_holds(PUISEUX) is False
    assert tc_holds(DVR) is True
    assert tc_holds(NC) is False
    assert tc_holds_family([spectrum_from_flags([True])] * 4) is True
    assert tc_holds_family([DVR, PUISEUX]) is False


def test_tc_matches_flat_collapse():
    for n in range(1, 6):
        for flags in all_flag_patterns(n):
            spec = spectrum_from_flags(flags)
            chains = enumerate_smashing(spec)
            flats = [c for c in chains if is_flat(spec, c)]
            assert len(flats) == n + 1
            assert tc_holds(spec) == (len(chains) == len(flats))


def test_thomason_sets():
    sets = thomason_sets(DVR)
    assert [render_thomason(DVR, t) for t in sets] == ["{}", "{p1}", "{p0,p1}"]
    assert chain_to_thomason(DVR, parse_chain(DVR, "{}")) == ThomasonSet(0)
    assert chain_to_thomason(DVR, parse_chain(DVR, "{[p0,p0]}")) == ThomasonSet(1)
    assert chain_to_thomason(DVR, parse_chain(DVR, "{[p0,p1]}")) == ThomasonSet(None)
    with pytest.raises(NotFlat):
        chain_to_thomason(PUISEUX, parse_chain(PUISEUX, "{[p1,p1]}"))


def test_thomason_bijection():
    for n in range(1, 6):
        for flags in all_flag_patterns(n):
            spec = spectrum_from_flags(flags)
            sets = thomason_sets(spec)
            assert len(sets) == n + 1
            flats = [c for c in enumerate_smashing(spec) if is_flat(spec, c)]
            images = {chain_to_thomason(spec, c) for c in flats}
            assert images == set(sets)


def test_removing_idempotent_flag_never_increases_count():
    for n in range(2, 6):
        for flags in all_flag_patterns(n):
            base = len(enumerate_smashing(spectrum_from_flags(flags)))
            for i in range(1, n):
                if flags[i]:
                    smaller = list(flags)
                    smaller[i] = False
                    assert len(enumerate_smashing(spectrum_from_flags(smaller))) <= base


def test_classify_family_chain_and_stages():
    chain = parse_chain(NC, "{[p0,p1],[f2_j,f2_j]*}")
    d = classify_chain(NC, chain)
    assert d.has_family and not d.is_flat and d.kernel == PrimeRef(0)
    assert ring_text(NC, d) == "dirlim(R_p1 x k(f2_j)*)"
    stage2 = finite_stage(NC, chain, 2)
    assert stage2 == [
        (PrimeRef(0), PrimeRef(2, 3)),
        (PrimeRef(2, 2), PrimeRef(2, 2)),
        (PrimeRef(2, 1), PrimeRef(2, 1)),
    ]
    # each stage is itself a valid finite-looking chain: ascending and separated
    for k in (1, 2, 5):
        stage = finite_stage(NC, chain, k)
        for (l1, u1), (l2, u2) in zip(stage, stage[1:]):
            assert NC.lt(u1, l2)


def test_chain_roundtrip():
    for spec in (PUISEUX, DVR, spectrum_from_flags([True, True, True])):
        for c in enumerate_smashing(spec):
            assert parse_chain(spec, render_chain(spec, c)) == c
    fam = parse_chain(NC, "{[p0,p1],[f2_j,f2_j]*}")
    assert parse_chain(NC, render_chain(NC, fam)) == fam
