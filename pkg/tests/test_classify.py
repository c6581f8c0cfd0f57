import pytest

from cspec.classify import (
    boolean_center,
    classification_report,
    complement,
    has_principal_commutators,
    is_abelian,
    is_baer,
    is_hyperarchimedean,
    is_strongly_baer,
)
from cspec.commutator import commutator_table
from cspec.fixtures import dual_numbers_z2, fixture
from cspec.partitions import Congruence

# name -> (abelian, semiprime, hyperarchimedean, baer, |boolean center|)
EXPECTED = {
    "z4ring": (False, False, True, False, 2),
    "z6ring": (False, True, True, True, 4),
    "z4group": (True, False, True, True, 2),
    "s3group": (False, False, True, False, 2),
    "b4lattice": (False, True, True, True, 4),
    "l3": (False, True, True, True, 4),
    "n5": (False, True, False, True, 2),
    "trivial": (True, True, True, True, 1),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_classification(name):
    abelian, semiprime, hyper, baer, center = EXPECTED[name]
    rep = classification_report(fixture(name))
    assert (rep.abelian, rep.semiprime, rep.hyperarchimedean, rep.baer) == (abelian, semiprime, hyper, baer)
    assert len(rep.boolean_center) == center
    assert rep.strongly_baer == rep.baer
    assert rep.compact_commutators and rep.principal_commutators


def test_boolean_center_and_complements():
    z6 = fixture("z6ring")
    t2 = Congruence.from_blocks(6, [[0, 2, 4], [1, 3, 5]])
    t3 = Congruence.from_blocks(6, [[0, 3], [1, 4], [2, 5]])
    assert len(boolean_center(z6)) == 4
    assert complement(z6, t2) == t3
    assert complement(z6, Congruence.identity(6)).is_total()
    z4 = fixture("z4ring")
    assert complement(z4, Congruence.from_blocks(4, [[0, 2], [1, 3]])) is None


def test_abelian():
    assert is_abelian(fixture("z4group"))
    assert not is_abelian(fixture("z4ring"))


def test_hyperarchimedean_examples():
    assert is_hyperarchimedean(fixture("z4ring"))  # [theta2, theta2] = Delta
    assert not is_hyperarchimedean(fixture("n5"))  # the atom is its own square and not complemented


def test_implications_gated_on_top_neutral():
    rep = classification_report(fixture("s3group"))
    assert all(i.holds is None for i in rep.implications)
    rep = classification_report(fixture("z6ring"))
    assert all(i.holds is True for i in rep.implications)


@pytest.mark.parametrize("alg", [fixture("z4ring"), dual_numbers_z2()], ids=["z4ring", "z2[x]/x2"])
def test_hyperarchimedean_does_not_force_strongly_baer(alg):
    # a square-zero ideal: [theta, theta] = Delta is central, but perp(theta) = theta is not
    rep = classification_report(alg)
    assert rep.flags.top_neutral and not rep.flags.meets_intersection
    assert rep.hyperarchimedean and not is_strongly_baer(alg)
    assert rep.implications[0].name == "hyperarchimedean => strongly Baer"
    assert rep.implications[0].holds is False
    assert rep.implications[1].holds is True


def test_baer_quantifies_over_principal_congruences():
    n5 = fixture("n5")
    assert is_baer(n5) and is_strongly_baer(n5)
    assert has_principal_commutators(n5)
    lat = commutator_table(n5).lattice
    assert len(lat.principal) == len(lat)
