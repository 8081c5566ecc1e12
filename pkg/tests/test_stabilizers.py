import pytest

from polytwo import catalog
from polytwo.errors import BadRank
from polytwo.generators import distinguished_generators
from polytwo.stabilizers import (build_family, build_primed_family, gamma_l_decomposition,
                                 stabilizer_keys, stabilizer_suite, subsets,
                                 verify_deficiency_lemmas, verify_intersection_property,
                                 verify_intertwine, verify_section_transitivity,
                                 verify_stabilizers)

NAMES = ["cube", "cuboctahedron", "icosidodecahedron", "rhombic_dodecahedron",
         "rhombic_triacontahedron", "hemi_cuboctahedron", "torus_2_1", "torus_rect_3_4"]


@pytest.fixture(scope="module")
def cubo_gs(cubo):
    return distinguished_generators(cubo)


def test_subsets():
    assert len(list(subsets(3))) == 8


def test_cuboctahedron_orders(cubo_gs):
    fam = build_family(cubo_gs)
    # vertex, edge, triangle stabilizers: 48/12, 48/24, 48/8
    assert [len(fam.lower({r})) for r in range(3)] == [4, 2, 6]
    assert len(fam.lower(set())) == 48
    assert len(fam.lower({0, 1, 2})) == 1
    primed = build_primed_family(cubo_gs, 2)
    assert len(primed.lower({2})) == 8


def test_stabilizer_keys_match(cubo_gs):
    fam = build_family(cubo_gs)
    for J in subsets(3):
        assert fam.lower(J).keys == stabilizer_keys(cubo_gs.group, 0, J)


@pytest.mark.parametrize("name", NAMES)
def test_stabilizer_suite(name):
    gs = distinguished_generators(catalog.get(name))
    for rep in stabilizer_suite(gs):
        assert rep.ok, (rep.name, rep.failures()[:2])


def test_family_reports(cubo_gs):
    fam = build_family(cubo_gs)
    pf = build_primed_family(cubo_gs, 2)
    assert verify_stabilizers(fam).instances == 8
    assert verify_intersection_property(fam).instances == 2 * 64  # lower and upper forms
    assert verify_intertwine(fam, pf, 2).ok
    assert verify_section_transitivity(fam).ok


def test_gamma_l_cuboctahedron(cubo_gs):
    dec = gamma_l_decomposition(cubo_gs, 1)
    assert dec.checks.ok
    assert dec.pm_generators == [] and dec.index == 1
    assert len(dec.minus) * len(dec.plus) == 2


def test_gamma_l_torus(torus21):
    gs = distinguished_generators(torus21)
    dec = gamma_l_decomposition(gs, 1)
    assert dec.checks.ok
    assert dec.index == 2 and dec.pm_generators == ["alpha_0_2"]
    with pytest.raises(BadRank):
        gamma_l_decomposition(gs, 3)


def test_deficiency_statuses():
    def status(name):
        return verify_deficiency_lemmas(distinguished_generators(catalog.get(name)))

    rep = status("cuboctahedron")
    assert rep.status == "APPLICABLE(rd=1)" and rep.ok and "minus" in rep.generators_used
    rep = status("rhombic_dodecahedron")
    assert rep.status == "APPLICABLE(rd=1)" and rep.ok and "plus" in rep.generators_used
    assert status("torus_rect_3_4").status == "APPLICABLE(rd=1)"
    rep = status("torus_hnf_8_3_1")
    assert rep.status == "APPLICABLE(rd=2)" and rep.ok and "rd2" in rep.generators_used
    assert status("torus_2_1").status == "NOT-APPLICABLE"
    assert status("cube").status == "NOT-APPLICABLE"
