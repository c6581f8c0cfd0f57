import warnings

import pytest

from cspec.commutator import commutator_table
from cspec.fixtures import CORE_FIXTURES, fixture, z2xz2_ring
from cspec.partitions import Congruence
from cspec.spectra import (
    Topology,
    TopologyError,
    dset,
    is_m_system,
    is_prime,
    is_semiprime,
    maximal_disjoint_congruences,
    min_over,
    minimal_prime_check_perp,
    minimal_prime_check_residuum,
    msystem_characterization,
    radical,
    radical_equiv_classes,
    radical_via_commutators,
    spectrum,
    stone_topology,
    vset,
)

from oracles import as_rel, naive_radical, naive_spectrum

# block strings, frozen after agreement with the brute-force spectrum oracle
SPECTRA = {
    "z4ring": (["0,2|1,3"], ["0,2|1,3"], ["0,2|1,3"], "0,2|1,3"),
    "z6ring": (["0,3|1,4|2,5", "0,2,4|1,3,5"], ["0,3|1,4|2,5", "0,2,4|1,3,5"], ["0,3|1,4|2,5", "0,2,4|1,3,5"], "0|1|2|3|4|5"),
    "z4group": ([], [], ["0,2|1,3"], "0,1,2,3"),
    "s3group": ([], [], ["0,3,4|1,2,5"], "0,1,2,3,4,5"),
    "b4lattice": (["0,1|2,3", "0,2|1,3"], ["0,1|2,3", "0,2|1,3"], ["0,1|2,3", "0,2|1,3"], "0|1|2|3"),
    "l3": (["0,1|2", "0|1,2"], ["0,1|2", "0|1,2"], ["0,1|2", "0|1,2"], "0|1|2"),
    "n5": (["0|1|2|3|4", "0,1,3|2,4", "0,2|1,3,4"], ["0|1|2|3|4"], ["0,1,3|2,4", "0,2|1,3,4"], "0|1|2|3|4"),
    "trivial": ([], [], [], "0"),
}


def _strs(cs):
    return sorted(str(c) for c in cs)


@pytest.mark.parametrize("name", sorted(SPECTRA))
def test_frozen_spectra(name):
    spec, mins, maxs, rad = SPECTRA[name]
    rep = spectrum(fixture(name))
    assert _strs(rep.spec) == sorted(spec)
    assert _strs(rep.min) == sorted(mins)
    assert _strs(rep.max) == sorted(maxs)
    assert str(rep.radical_of_delta) == rad
    assert rep.semiprime == (rad == str(Congruence.identity(fixture(name).size)))


@pytest.mark.parametrize("name", CORE_FIXTURES + ("n5",))
def test_spectrum_matches_oracle(name):
    alg = fixture(name)
    spec, mins = naive_spectrum(alg)
    rep = spectrum(alg)
    assert {as_rel(c) for c in rep.spec} == set(spec)
    assert {as_rel(c) for c in rep.min} == set(mins)
    lat = commutator_table(alg).lattice
    for c in lat:
        assert as_rel(radical(alg, c)) == naive_radical(alg, as_rel(c))


@pytest.mark.parametrize("name", CORE_FIXTURES + ("n5",))
def test_principal_primality_agrees_with_definition(name):
    alg = fixture(name)
    for c in commutator_table(alg).lattice:
        assert is_prime(alg, c) == is_prime(alg, c, method="definition")
    with pytest.raises(ValueError):
        is_prime(alg, c, method="bogus")


def test_max_in_spec():
    assert spectrum(fixture("z6ring")).max_in_spec
    assert not spectrum(fixture("s3group")).max_in_spec
    with pytest.raises(TopologyError):
        stone_topology(fixture("s3group"), "max")


@pytest.mark.parametrize("name", ["z4ring", "z6ring", "n5", "b4lattice"])
def test_radical_via_commutators(name):
    alg = fixture(name)
    for c in commutator_table(alg).lattice:
        assert radical_via_commutators(alg, c) == radical(alg, c)


def test_vset_dset():
    z6 = fixture("z6ring")
    lat = commutator_table(z6).lattice
    t2 = lat[2]
    assert _strs(vset(z6, t2)) == ["0,2,4|1,3,5"]
    assert _strs(dset(z6, t2)) == ["0,3|1,4|2,5"]
    assert vset(z6, lat[lat.top]) == frozenset()
    assert dset(z6, lat[lat.bottom]) == frozenset()


def test_stone_topologies():
    z6 = stone_topology(fixture("z6ring"))
    assert len(z6.points) == 2 and len(z6.opens) == 4
    assert z6.is_hausdorff() and z6.all_clopen() and z6.is_compact()
    n5 = stone_topology(fixture("n5"))
    assert len(n5.points) == 3
    assert not n5.is_hausdorff()  # every open set containing a maximal prime also contains Delta
    m = stone_topology(fixture("n5"), "min")
    assert m.is_hausdorff() and m.all_clopen()
    assert n5.is_open(frozenset())
    with pytest.raises(ValueError):
        stone_topology(fixture("n5"), "bogus")


def test_topology_axioms_enforced():
    alg = fixture("trivial")
    with pytest.raises(TopologyError):
        Topology(alg, "spec", (), frozenset({frozenset({0})}), {})


def test_m_systems():
    z6 = fixture("z6ring")
    lat = commutator_table(z6).lattice
    t3 = lat[1]
    full = [(a, b) for a in range(6) for b in range(6)]
    # complement of a prime is an m-system
    comp = [p for p in full if not t3.related(*p)]
    assert is_m_system(z6, comp)
    assert is_m_system(z6, [])
    # {(0,3)} alone: [Cg(0,3), Cg(0,3)] = theta3 meets the set, so yes; {(0,2),(0,3)} no
    assert is_m_system(z6, [(0, 3)])
    assert not is_m_system(z6, [(0, 2), (0, 3)])
    got = maximal_disjoint_congruences(z6, comp, lat[0])
    assert got == [t3]
    with pytest.raises(ValueError):
        maximal_disjoint_congruences(z6, [(0, 3)], t3)


@pytest.mark.parametrize("name", ["z4ring", "z6ring", "b4lattice", "n5"])
def test_msystem_characterization_exhaustive_or_sampled(name):
    alg = fixture(name)
    for theta in commutator_table(alg).lattice:
        for row in msystem_characterization(alg, theta, samples=200, seed=1):
            assert row.minimal == row.maximal
            assert row.exhaustive == (alg.size <= 4)


def test_min_over():
    n5 = fixture("n5")
    lat = commutator_table(n5).lattice
    assert _strs(min_over(n5, lat[0])) == ["0|1|2|3|4"]
    assert _strs(min_over(n5, lat[1])) == ["0,1,3|2,4", "0,2|1,3,4"]
    assert min_over(n5, lat[lat.top]) == []


@pytest.mark.parametrize("name", ["z6ring", "n5", "b4lattice"])
def test_minimal_prime_criteria(name):
    alg = fixture(name)
    rep = spectrum(alg)
    mins = set(rep.min)
    for c in rep.spec:
        assert minimal_prime_check_perp(alg, c) == (c in mins)
        assert minimal_prime_check_residuum(alg, c) == (c in mins)


def test_perp_criterion_warns_without_semiprime():
    z4 = fixture("z4ring")
    with pytest.warns(UserWarning):
        minimal_prime_check_perp(z4, commutator_table(z4).lattice[1])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert minimal_prime_check_residuum(z4, commutator_table(z4).lattice[1])


def test_semiprime_and_radical_classes():
    assert is_semiprime(fixture("z6ring")) and not is_semiprime(fixture("z4ring"))
    classes = radical_equiv_classes(fixture("z4ring"))
    assert [[str(c) for c in g] for g in classes] == [["0|1|2|3", "0,2|1,3"], ["0,1,2,3"]]


def test_product_ring_spectrum():
    rep = spectrum(z2xz2_ring())
    assert len(rep.spec) == 2 and rep.semiprime
