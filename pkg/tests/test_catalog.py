import pytest

from polytwo import catalog
from polytwo.classify import classify, double_schlafli
from polytwo.errors import BadParameter, DegenerateQuotient
from polytwo.flags import build_flag_graph
from polytwo.poset import is_isomorphic, validate_polytope

COUNTS = {
    "triangle": [3, 3], "pentagon": [5, 5], "hexagon": [6, 6],
    "tetrahedron": [4, 6, 4], "cube": [8, 12, 6], "octahedron": [6, 12, 8],
    "dodecahedron": [20, 30, 12], "icosahedron": [12, 30, 20],
    "simplex4": [5, 10, 10, 5], "tesseract": [16, 32, 24, 8],
    "hemi_cube": [4, 6, 3], "hemi_dodecahedron": [10, 15, 6],
    "cuboctahedron": [12, 24, 14], "icosidodecahedron": [30, 60, 32],
    "rhombic_dodecahedron": [14, 24, 12], "rhombic_triacontahedron": [32, 60, 30],
    "hemi_cuboctahedron": [6, 12, 7], "hemi_icosidodecahedron": [15, 30, 16],
    "torus_2_1": [5, 10, 5], "torus_3_1": [10, 20, 10], "torus_3_0": [9, 18, 9],
    "torus_rect_3_4": [12, 24, 12],
}


def _counts(p):
    fc = p.face_counts()
    return [fc[r] for r in range(p.n)]


def test_catalog_complete():
    assert set(catalog.catalog_names()) == set(COUNTS)


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_entry_counts_and_validity(name):
    p = catalog.get(name)
    assert _counts(p) == COUNTS[name]
    assert validate_polytope(p).ok


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_expected_fragments(name):
    entry = catalog.CATALOG[name]
    prof = classify(entry.build())
    exp = entry.expected or {}
    if "orbits" in exp:
        assert prof.orbit_count == exp["orbits"]
    if "I" in exp:
        assert sorted(prof.class_type_set) == sorted(exp["I"])
    if "symbol" in exp:
        sym = double_schlafli(entry.build())
        assert [list(sym.top), list(sym.bottom)] == [list(r) for r in exp["symbol"]]


def test_regular_examples():
    assert len(build_flag_graph(catalog.cube(3)).flags) == 48
    assert len(build_flag_graph(catalog.simplex(3)).flags) == 24
    assert len(build_flag_graph(catalog.polygon(5)).flags) == 10
    with pytest.raises(BadParameter):
        catalog.make_regular("polygon", 2)
    with pytest.raises(BadParameter):
        catalog.make_regular("cube", 6)
    with pytest.raises(BadParameter):
        catalog.make_regular("prism")


@pytest.mark.parametrize("name", ["hemi_cube", "hemi_dodecahedron"])
def test_hemi_projective(name):
    c = _counts(catalog.make_hemi(name))
    assert c[0] - c[1] + c[2] == 1


def test_hemi_cube_matches_quotient():
    assert is_isomorphic(catalog.hemi_cube(), catalog.quotient(*catalog._cube_antipodal()))


def test_medial_of_isomorphic_inputs():
    a = catalog.medial(catalog.cube(3))
    b = catalog.medial(catalog.relabel(catalog.cube(3), names=None))
    assert is_isomorphic(a, b)
    assert is_isomorphic(catalog.medial(catalog.hemi_cube()), catalog.get("hemi_cuboctahedron"))


def test_torus_constructor():
    p = catalog.torus_44(2, 1)
    assert _counts(p) == [5, 10, 5] and classify(p).chirality
    assert classify(catalog.torus_44(3, 0)).is_regular
    # the 2x2 quotient passes the validator and is the regular map {4,4}_(2,0)
    small = catalog.torus_44(2, 0)
    assert _counts(small) == [4, 8, 4] and classify(small).is_regular
    with pytest.raises((DegenerateQuotient, BadParameter)):
        catalog.torus_44(1, 1)


def test_search_outcome():
    res = catalog.torus_search()
    assert res.examined == 522 and res.valid == 426
    assert res.class_counts == {"2_{0,2}": 66, "2_{1}": 26, "2_{}": 12,
                                "4-orbit": 316, "regular": 6}
    assert len(res.specimens) == 26
    for spec in res.specimens[:5]:
        prof = classify(spec.build())
        assert prof.orbit_count == 2 and set(prof.class_type_set) == {1}


def test_duals_and_search():
    names = [e.name for e in catalog.duals_and_search()]
    assert names[:2] == ["rhombic_dodecahedron", "rhombic_triacontahedron"]
    assert len(names) == 28


def test_unknown_name():
    with pytest.raises(BadParameter):
        catalog.get("nope")
