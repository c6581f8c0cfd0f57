import random

import pytest
from hypothesis import given, settings, strategies as st

from cspec.fixtures import CORE_FIXTURES, FIXTURES, fixture, random_algebra, zn_ring
from cspec.partitions import (
    Congruence,
    EnumerationCapExceeded,
    all_congruences,
    cg,
    is_compatible,
    pjoin,
    pmeet,
    pleq,
    principal_congruences,
)

from oracles import as_rel, naive_cg, naive_congruences

# sizes of Con(A), computed by brute force over all partitions (see oracles.naive_congruences)
CON_SIZES = {"z4ring": 3, "z6ring": 4, "z4group": 3, "s3group": 3, "b4lattice": 4, "l3": 4, "n5": 5, "trivial": 1}


def test_canonical_form_and_blocks():
    c = Congruence.from_pairs(4, [(3, 1), (2, 0)])
    assert c.rep == (0, 1, 0, 1)
    assert c.blocks() == [[0, 2], [1, 3]]
    assert str(c) == "0,2|1,3"
    assert c.num_blocks == 2
    assert Congruence.from_blocks(4, [[1, 3], [0, 2]]) == c
    with pytest.raises(ValueError):
        Congruence((1, 0))


def test_pairs_and_mask():
    c = Congruence.from_blocks(3, [[0, 2], [1]])
    assert set(c.pairs()) == {(0, 0), (1, 1), (2, 2), (0, 2), (2, 0)}
    assert c.pair_mask == sum(1 << (a * 3 + b) for a, b in c.pairs())


def test_lattice_operations():
    a = Congruence.from_blocks(4, [[0, 1], [2], [3]])
    b = Congruence.from_blocks(4, [[1, 2], [0], [3]])
    assert pjoin(a, b) == Congruence.from_blocks(4, [[0, 1, 2], [3]])
    assert pmeet(a, b) == Congruence.identity(4)
    assert pleq(a, a | b) and not pleq(a, b)
    assert (a & b) <= a


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_con_matches_brute_force(name):
    alg = fixture(name)
    lat = all_congruences(alg)
    assert len(lat) == CON_SIZES[name]
    assert {as_rel(c) for c in lat} == set(naive_congruences(alg))
    assert lat[lat.bottom].is_identity() and lat[lat.top].is_total()


def test_z4ring_chain_and_z6ring_diamond():
    lat = all_congruences(fixture("z4ring"))
    assert [str(c) for c in lat] == ["0|1|2|3", "0,2|1,3", "0,1,2,3"]
    lat6 = all_congruences(fixture("z6ring"))
    assert sorted(lat6.covers()) == [(0, 1), (0, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize("name", CORE_FIXTURES)
def test_every_congruence_is_the_join_of_its_principals(name):
    lat = all_congruences(fixture(name))
    for i, c in enumerate(lat):
        below = [p for p in lat.principal if lat.leq[p, i]]
        assert lat.join_all(below) == i


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=5))
def test_cg_is_the_least_congruence_containing_the_pairs(seed, pairs):
    alg = random_algebra(random.Random(seed), size=4)
    c = cg(alg, pairs)
    assert is_compatible(alg, c.rep)
    assert as_rel(c) == naive_cg(alg, pairs)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.data())
def test_cg_closure_operator(seed, data):
    alg = random_algebra(random.Random(seed), size=4)
    pair = st.tuples(st.integers(0, 3), st.integers(0, 3))
    x = data.draw(st.lists(pair, max_size=4))
    y = data.draw(st.lists(pair, max_size=4))
    cx = cg(alg, x)
    assert all(cx.related(a, b) for a, b in x)  # extensive
    assert cg(alg, cx.pairs()) == cx  # idempotent
    assert cx <= cg(alg, x + y)  # monotone


def test_lattice_axioms_on_enumerated_members():
    lat = all_congruences(fixture("n5"))
    J, M = lat.join_table, lat.meet_table
    m = len(lat)
    for a in range(m):
        for b in range(m):
            assert J[a, M[a, b]] == a and M[a, J[a, b]] == a
            for c in range(m):
                assert J[J[a, b], c] == J[a, J[b, c]]
                assert M[M[a, b], c] == M[a, M[b, c]]


def test_principal_congruences():
    z6 = zn_ring(6)
    strs = sorted(str(c) for c in principal_congruences(z6))
    assert strs == sorted(["0|1|2|3|4|5", "0,3|1,4|2,5", "0,2,4|1,3,5", "0,1,2,3,4,5"])


def test_enumeration_cap(monkeypatch):
    alg = fixture("n5")
    with pytest.raises(EnumerationCapExceeded):
        all_congruences(alg, max_size=3)
    monkeypatch.setenv("CSPEC_MAX_CON", "2")
    with pytest.raises(EnumerationCapExceeded):
        all_congruences(fixture("b4lattice"))
