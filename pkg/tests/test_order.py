import pytest

from polytwo import catalog
from polytwo.errors import CaseUndefined
from polytwo.order import (ADJACENT, BASE, coset_count_check, coset_faces, face_to_coset,
                           incidence_oracle, oracle_case, order_data, rebuild_order,
                           roundtrip_check, verify_oracle_against_poset)
from polytwo.poset import is_isomorphic, validate_polytope

NAMES = ["cube", "tetrahedron", "cuboctahedron", "rhombic_dodecahedron",
         "hemi_cuboctahedron", "torus_2_1", "torus_rect_3_4", "hexagon"]


@pytest.mark.parametrize("name", NAMES)
def test_roundtrip(name):
    assert roundtrip_check(catalog.get(name))


def test_roundtrip_rd2_specimen():
    assert roundtrip_check(catalog.get("torus_hnf_8_3_1"))


@pytest.mark.parametrize("name", NAMES)
def test_oracle_matches_poset(name):
    rep = verify_oracle_against_poset(catalog.get(name))
    assert rep.ok, rep.failures()[:2]


def test_cuboctahedron_coset_counts(cubo):
    data = order_data(cubo)
    rep = coset_count_check(cubo, data)
    assert rep.ok
    t = rep.details
    assert t[0]["index"] == {BASE: 12}
    assert t[1]["index"] == {BASE: 24}
    assert t[2]["index"] == {BASE: 8, ADJACENT: 6}


def test_special_rank_cases(cubo):
    data = order_data(cubo)
    assert data.special == 2
    faces = coset_faces(data)
    tri = [f for f in faces[2] if f.family == BASE][0]
    sq = [f for f in faces[2] if f.family == ADJACENT][0]
    v = faces[0][0]
    assert oracle_case(data, tri, sq) == "mixed" and not incidence_oracle(data, tri, sq)
    assert oracle_case(data, sq, sq) == "D" and incidence_oracle(data, sq, sq)
    assert oracle_case(data, v, sq) == "C'"
    assert oracle_case(data, v, tri) == "A"
    with pytest.raises(CaseUndefined):
        oracle_case(data, sq, v)


def test_case_b_on_rd2_specimen(torus21):
    data = order_data(catalog.get("torus_hnf_8_3_1"))
    faces = coset_faces(data)
    assert data.special is None
    assert oracle_case(data, faces[0][0], faces[2][0]) == "B"
    assert oracle_case(data, faces[0][0], faces[1][0]) == "A"
    # three ranks outside I: every pair falls under the plain criterion
    data = order_data(torus21)
    faces = coset_faces(data)
    assert oracle_case(data, faces[0][0], faces[2][0]) == "A"


def test_face_to_coset_bijection(cubo):
    data = order_data(cubo)
    faces = coset_faces(data)
    for r in range(3):
        mapped = {face_to_coset(data, f) for f in cubo.faces_of_rank(r)}
        assert mapped == set(faces[r])


def test_rebuilt_is_polytope(torus21):
    q = rebuild_order(torus21)
    assert validate_polytope(q).ok and is_isomorphic(q, torus21)
    assert q.face_counts() == torus21.face_counts()
