import pytest

from polytwo import catalog
from polytwo.classify import (DoubleSchlafli, chain_orbit_check, chain_lemma_check, classify,
                              class_well_defined_check, double_schlafli, equivelar_check,
                              face_transitivity_report, is_equivelar, parity_check,
                              section_class_check, section_orbit_report)
from polytwo.errors import BadRank, NotAChain, NotTwoOrbit
from polytwo.flags import build_flag_graph

import oracles

# (orbits, I) frozen from oracles.class_type_set
REFERENCE = {
    "cube": (1, {0, 1, 2}),
    "hemi_cube": (1, {0, 1, 2}),
    "tesseract": (1, {0, 1, 2, 3}),
    "cuboctahedron": (2, {0, 1}),
    "icosidodecahedron": (2, {0, 1}),
    "rhombic_dodecahedron": (2, {1, 2}),
    "rhombic_triacontahedron": (2, {1, 2}),
    "hemi_cuboctahedron": (2, {0, 1}),
    "hemi_icosidodecahedron": (2, {0, 1}),
    "torus_2_1": (2, set()),
    "torus_rect_3_4": (2, {0, 2}),
}


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_class_matches_oracle(name):
    p = catalog.get(name)
    prof = classify(p)
    orbits, I = REFERENCE[name]
    assert (prof.orbit_count, set(prof.class_type_set)) == (orbits, I)
    assert prof.reflection_deficiency == p.n - len(I)
    assert prof.chirality == (orbits == 2 and not I)
    if orbits == 2:
        assert prof.class_type_set != frozenset(range(p.n))


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_symbol_rows_match_oracle(name):
    p = catalog.get(name)
    sym = double_schlafli(p)
    assert {sym.top, sym.bottom} == oracles.symbol_rows(p)
    assert sym.top == oracles.two_section_sizes(p, oracles.chains(p)[0])


def test_reference_symbols():
    assert double_schlafli(catalog.get("cuboctahedron")) == DoubleSchlafli((3, 4), (4, 4))
    assert double_schlafli(catalog.get("icosidodecahedron")) == DoubleSchlafli((3, 4), (5, 4))
    assert double_schlafli(catalog.get("rhombic_dodecahedron")) == DoubleSchlafli((4, 3), (4, 4))
    assert double_schlafli(catalog.get("cube")) == DoubleSchlafli((4, 3), (4, 3))


def test_canonical_symbol():
    s = DoubleSchlafli((4, 4), (3, 4))
    assert s.canonical() == DoubleSchlafli((3, 4), (4, 4))
    assert s.canonical().canonical() == s.canonical()
    assert not s.is_equivelar and DoubleSchlafli((4, 4), (4, 4)).is_equivelar


def test_degraded_profile():
    p = catalog.torus_map(catalog.Lattice2((5, 0), (2, 3)))
    prof = classify(p)
    assert prof.orbit_count > 2 and prof.class_type_set is None and prof.symbol is None
    assert prof.label().endswith("-orbit")
    with pytest.raises(NotTwoOrbit):
        double_schlafli(p)


def test_low_rank_is_regular():
    assert classify(catalog.polygon(7)).is_regular
    from polytwo.poset import RankedPoset
    seg = RankedPoset.from_proper(1, {"a": (0, ()), "b": (0, ())})
    assert classify(seg).is_regular


def test_face_transitivity(cubo, torus21):
    rep = face_transitivity_report(cubo)
    assert rep.ok and rep.details["orbits_per_rank"] == {0: 1, 1: 1, 2: 2}
    rep = face_transitivity_report(catalog.get("rhombic_dodecahedron"))
    assert rep.ok and rep.details["orbits_per_rank"][0] == 2
    rep = face_transitivity_report(torus21)
    assert rep.ok and rep.details["fully_transitive"]
    with pytest.raises(NotTwoOrbit):
        face_transitivity_report(catalog.get("cube"))


def test_section_orbits(cubo, torus21):
    assert section_orbit_report(cubo, -1, 2).details["orbits"] == 2
    assert section_orbit_report(cubo, 0, 3).details["orbits"] == 1
    assert section_orbit_report(torus21, 0, 2).details["orbits"] == 1
    with pytest.raises(BadRank):
        section_orbit_report(cubo, 2, 1)


def test_section_class(cubo):
    assert section_class_check(cubo).ok
    assert section_class_check(catalog.get("icosidodecahedron")).ok


def test_chain_orbit(cubo):
    g = build_flag_graph(cubo)
    base = g.flags[0]
    assert chain_orbit_check(cubo, {base[2]})
    assert not chain_orbit_check(cubo, {base[0]})
    assert chain_orbit_check(cubo, set(base))
    with pytest.raises(NotAChain):
        chain_orbit_check(cubo, {cubo.faces_of_rank(0)[0], cubo.faces_of_rank(0)[1]})


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_theorem_checks(name):
    p = catalog.get(name)
    assert class_well_defined_check(p).ok
    assert equivelar_check(p).ok
    if classify(p).orbit_count == 2:
        assert chain_lemma_check(p).ok
        assert parity_check(p).ok


def test_equivelar_direct():
    assert is_equivelar(catalog.get("torus_2_1"))
    assert not is_equivelar(catalog.get("cuboctahedron"))
