import numpy as np
import pytest

from polytwo import catalog
from polytwo.errors import BadLetter, NoPath
from polytwo.flags import apply_word, build_flag_graph, connecting_word, export_flags

import oracles


@pytest.mark.parametrize("name,count", [("cube", 48), ("cuboctahedron", 96), ("pentagon", 10),
                                        ("torus_2_1", 40), ("tesseract", 384)])
def test_flag_counts(name, count):
    p = catalog.get(name)
    g = build_flag_graph(p)
    assert len(g) == count == len(oracles.chains(p))
    assert g.flags == oracles.chains(p)


def test_adjacency_matches_oracle(cubo):
    g = build_flag_graph(cubo)
    for k, f in enumerate(g.flags):
        for i in range(3):
            assert g.flags[g.adj[i, k]] == oracles.adjacent(cubo, f, i)


def test_words(cube):
    g = build_flag_graph(cube)
    for k in range(len(g)):
        for i in range(3):
            assert apply_word(g, k, (i, i)) == k
        assert apply_word(g, k, (0, 2)) == apply_word(g, k, (2, 0))
    assert apply_word(g, 5, ()) == 5
    # walking 0,1,0 keeps the square and the vertex-edge pattern rotates
    end = apply_word(g, 0, (0, 1, 0))
    assert g.flags[end][2] == g.flags[0][2]
    with pytest.raises(BadLetter):
        apply_word(g, 0, (3,))


def test_connecting_word(cube, cubo):
    g = build_flag_graph(cube)
    assert connecting_word(g, 3, 3) == ()
    assert connecting_word(g, 0, int(g.adj[0, 0])) == (0,)
    h = build_flag_graph(cubo)
    v = h.flags[0][0]
    same_vertex = [k for k, f in enumerate(h.flags) if f[0] == v]
    w = connecting_word(h, same_vertex[0], same_vertex[-1], forbidden={0})
    assert 0 not in w and apply_word(h, same_vertex[0], w) == same_vertex[-1]
    other = next(k for k, f in enumerate(h.flags) if f[0] != v)
    with pytest.raises(NoPath):
        connecting_word(h, 0, other, forbidden={0})


def test_random_connecting_words():
    rng = np.random.default_rng(1)
    for name in ("cuboctahedron", "torus_3_1", "rhombic_dodecahedron"):
        g = build_flag_graph(catalog.get(name))
        for _ in range(1000):
            a, b = (int(x) for x in rng.integers(len(g), size=2))
            keep = {r for r in range(g.n) if g.flags[a][r] == g.flags[b][r]}
            forb = set(rng.choice(sorted(keep), size=min(len(keep), 1), replace=False)) if keep else set()
            w = connecting_word(g, a, b, forbidden=forb)
            assert not set(w) & forb
            assert apply_word(g, a, w) == b


def test_export_flags(torus21):
    text = export_flags(build_flag_graph(torus21))
    lines = text.strip().splitlines()
    assert len(lines) == 40
    assert lines[0].split(" : ")[0] == "0" and len(lines[0].split(" : ")[1].split()) == 3
