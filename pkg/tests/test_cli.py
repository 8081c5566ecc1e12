import io
import json

import pytest

from polytwo import catalog
from polytwo.apf import write_apf
from polytwo.cli import run_command


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_analyze_cuboctahedron():
    code, out, _ = run(["analyze", "catalog:cuboctahedron"])
    assert code == 0
    js = json.loads(out)
    assert js["class"] == "2_{0,1}" and js["flags"] == 96
    assert js["symbol_top"] == [3, 4] and js["symbol_bottom"] == [4, 4]
    assert set(js["theorem_checks"].values()) == {"PASS"}


def test_analyze_torus():
    code, out, _ = run(["analyze", "torus:2,1"])
    js = json.loads(out)
    assert code == 0 and js["chirality"] is True and js["fully_transitive"] is True


def _four_orbit_file(tmp_path):
    path = tmp_path / "t.apf"
    write_apf(catalog.torus_map(catalog.Lattice2((5, 0), (2, 3))), path)
    return str(path)


def test_analyze_many_orbits(tmp_path):
    code, out, _ = run(["analyze", _four_orbit_file(tmp_path)])
    js = json.loads(out)
    assert code == 0 and js["orbit_count"] == 4 and "note" in js


def test_verify_rejects_many_orbits(tmp_path):
    code, _, err = run(["verify", _four_orbit_file(tmp_path)])
    assert code == 2 and "two-orbit" in err


@pytest.mark.parametrize("suite", ["relations", "stabilizers", "intersections", "sections",
                                   "deficiency", "order"])
def test_verify_suites(suite):
    code, out, _ = run(["verify", "--suite", suite, "catalog:cuboctahedron"])
    js = json.loads(out)
    assert code == 0 and js["verdict"] == "PASS"
    assert js["suites"][suite]["verdict"] == "PASS"


def test_verify_all_regular():
    code, out, _ = run(["verify", "catalog:cube"])
    assert code == 0 and json.loads(out)["verdict"] == "PASS"


def test_rebuild(tmp_path):
    code, out, _ = run(["rebuild", "catalog:hemi_cuboctahedron"])
    assert code == 0 and out.startswith("APF 1") and out.rstrip().endswith("roundtrip: ok")


def test_catalog_list():
    code, out, _ = run(["catalog", "list"])
    rows = json.loads(out)["entries"]
    assert code == 0 and len(rows) == 22
    cub = next(r for r in rows if r["name"] == "cuboctahedron")
    assert cub["class"] == "2_{0,1}" and cub["rank"] == 3


def test_catalog_list_search():
    code, out, _ = run(["catalog", "list", "--with-search"])
    js = json.loads(out)
    assert code == 0 and js["search"]["rd2_specimens"] == 26


def test_export_flags():
    code, out, _ = run(["export-flags", "catalog:triangle"])
    assert code == 0 and out.strip()


def test_file_input(tmp_path):
    path = tmp_path / "c.apf"
    write_apf(catalog.get("cube"), path)
    code, out, _ = run(["analyze", str(path)])
    assert code == 0 and json.loads(out)["class"] == "regular"


def test_bad_inputs(tmp_path):
    assert run(["analyze", str(tmp_path / "missing.apf")])[0] == 2
    assert run(["analyze", "catalog:nope"])[0] == 2
    assert run(["analyze", "torus:x"])[0] == 2
    bad = tmp_path / "bad.apf"
    bad.write_text("APF 1\n0 a :\n")
    code, _, err = run(["analyze", str(bad)])
    assert code == 2 and "line 2" in err
    assert run([])[0] == 2
    # not a polytope: two disjoint edges
    nonpoly = tmp_path / "np.apf"
    nonpoly.write_text("APF 1\nrank 2\n0 a :\n0 b :\n0 c :\n0 d :\n1 x : a b\n1 y : c d\n")
    assert run(["analyze", str(nonpoly)])[0] == 2
