"""Witness polytopes: regular baselines, medials, duals, hemi quotients and tori."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import BadParameter, DegenerateQuotient
from .poset import BOT, TOP, RankedPoset, dual, validate_polytope

RANK_PREFIX = {0: "v", 1: "e", 2: "f"}


def relabel(p: RankedPoset, names=None) -> RankedPoset:
    """Rename proper faces to ``v0, v1, ...``, ``e0, ...`` (rank-prefixed).

    Faces are numbered within each rank in canonical (rank, id) order, with
    zero padding so that string order agrees with numeric order.
    Rank 3 and higher faces get the prefix ``r<rank>_``.
    """
    if names is None:
        names = {}
        for r in range(0, p.n):
            prefix = RANK_PREFIX.get(r, f"r{r}_")
            fs = p.faces_of_rank(r)
            width = len(str(max(len(fs) - 1, 0)))
            for k, f in enumerate(fs):
                names[f] = f"{prefix}{k:0{width}d}"
    names = dict(names)
    for f in p.face_ids():
        names.setdefault(f, f)
    ranks = {names[f]: p.rank(f) for f in p.face_ids()}
    covers = {names[f]: [names[g] for g in p.covers(f)] for f in p.face_ids()}
    return RankedPoset(p.n, ranks, covers)


def polygon(p: int) -> RankedPoset:
    if p < 2:
        raise BadParameter("polygon needs p >= 2")
    faces = {f"v{k}": (0, ()) for k in range(p)}
    for k in range(p):
        faces[f"e{k}"] = (1, (f"v{k}", f"v{(k + 1) % p}"))
    return RankedPoset.from_proper(2, faces)


def simplex(n: int) -> RankedPoset:
    if not 1 <= n <= 5:
        raise BadParameter("simplex rank must be in 1..5")
    verts = range(n + 1)
    name = {}
    faces = {}
    for size in range(1, n + 1):
        for sub in itertools.combinations(verts, size):
            name[sub] = "s" + "_".join(map(str, sub))
    for sub, fid in name.items():
        below = [name[tuple(x for x in sub if x != y)] for y in sub] if len(sub) > 1 else ()
        faces[fid] = (len(sub) - 1, below)
    return RankedPoset.from_proper(n, faces)


def cube(n: int) -> RankedPoset:
    if not 1 <= n <= 5:
        raise BadParameter("cube rank must be in 1..5")
    sym = {-1: "m", 0: "z", 1: "p"}
    faces = {}
    for vec in itertools.product((-1, 0, 1), repeat=n):
        free = vec.count(0)
        if free == n:
            continue
        below = []
        for k, x in enumerate(vec):
            if x == 0:
                for s in (-1, 1):
                    below.append(vec[:k] + (s,) + vec[k + 1:])
        faces[vec] = (free, below)
    ident = {vec: "c" + "".join(sym[x] for x in vec) for vec in faces}
    return RankedPoset.from_proper(
        n, {ident[v]: (r, [ident[b] for b in below]) for v, (r, below) in faces.items()})


def _icosahedron_vertices():
    phi = (1 + 5 ** 0.5) / 2
    pts = []
    for a, b in itertools.product((-1, 1), repeat=2):
        pts += [(0, a, b * phi), (a, b * phi, 0), (b * phi, 0, a)]
    return np.array(pts)


def _from_vertex_sets(pts, prefix="x"):
    """Polyhedron from coordinates: edges of length 2, triangles = 3-cliques."""
    m = len(pts)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    edges = [(a, b) for a in range(m) for b in range(a + 1, m) if abs(dist[a, b] - 2) < 1e-9]
    eset = set(edges)
    tris = [t for t in itertools.combinations(range(m), 3)
            if {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])} <= eset]
    faces = {f"{prefix}v{a}": (0, ()) for a in range(m)}
    for a, b in edges:
        faces[f"{prefix}e{a}_{b}"] = (1, (f"{prefix}v{a}", f"{prefix}v{b}"))
    for a, b, c in tris:
        faces[f"{prefix}t{a}_{b}_{c}"] = (2, (f"{prefix}e{a}_{b}", f"{prefix}e{a}_{c}",
                                             f"{prefix}e{b}_{c}"))
    return RankedPoset.from_proper(3, faces), edges, tris


def icosahedron() -> RankedPoset:
    return relabel(_from_vertex_sets(_icosahedron_vertices())[0])


def dodecahedron() -> RankedPoset:
    return relabel(dual(_from_vertex_sets(_icosahedron_vertices())[0]))


def make_regular(kind: str, param: int | None = None) -> RankedPoset:
    """``polygon``/``simplex``/``cube`` take a parameter; solids do not."""
    if kind == "polygon":
        if param is None or param < 3:
            raise BadParameter("polygon needs p >= 3")
        return polygon(param)
    if kind == "simplex":
        return simplex(3 if param is None else param)
    if kind == "cube":
        return cube(3 if param is None else param)
    if kind == "dodecahedron":
        return dodecahedron()
    if kind == "icosahedron":
        return icosahedron()
    raise BadParameter(f"unknown regular kind {kind!r}")


def quotient(p: RankedPoset, pairing) -> RankedPoset:
    """Identify each proper face with its image under a fixed-point-free involution."""
    cls = {}
    for f in p.face_ids():
        if f in (p.bottom, p.top):
            continue
        g = pairing[f]
        if g == f:
            raise DegenerateQuotient(f"pairing fixes {f}")
        cls[f] = min(f, g) + "_q"
    faces = {}
    for f, name in cls.items():
        below = {cls[g] for g in p.covers(f) if g in cls}
        r = p.rank(f)
        if name in faces:
            faces[name] = (r, sorted(set(faces[name][1]) | below))
        else:
            faces[name] = (r, sorted(below))
    return RankedPoset.from_proper(p.n, faces)


def _cube_antipodal():
    c = cube(3)
    flip = {"m": "p", "p": "m", "z": "z"}
    pairing = {f: "c" + "".join(flip[x] for x in f[1:]) for f in c.face_ids()
               if f not in (BOT, TOP)}
    return c, pairing


def _icosahedron_antipodal():
    pts = _icosahedron_vertices()
    p, edges, tris = _from_vertex_sets(pts)
    neg = {}
    for a in range(len(pts)):
        b = int(np.argmin(np.linalg.norm(pts + pts[a], axis=1)))
        neg[a] = b
    pairing = {f"xv{a}": f"xv{neg[a]}" for a in neg}
    for a, b in edges:
        x, y = sorted((neg[a], neg[b]))
        pairing[f"xe{a}_{b}"] = f"xe{x}_{y}"
    for t in tris:
        x = sorted(neg[v] for v in t)
        pairing["xt" + "_".join(map(str, t))] = "xt" + "_".join(map(str, x))
    return p, pairing


def hemi_cube() -> RankedPoset:
    """K4 with its three 4-cycles as squares."""
    faces = {f"v{a}": (0, ()) for a in range(4)}
    for a, b in itertools.combinations(range(4), 2):
        faces[f"e{a}{b}"] = (1, (f"v{a}", f"v{b}"))
    for k, cyc in enumerate([(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)]):
        edges = ["e{}{}".format(*sorted((cyc[m], cyc[(m + 1) % 4]))) for m in range(4)]
        faces[f"f{k}"] = (2, edges)
    return RankedPoset.from_proper(3, faces)


def make_hemi(kind: str) -> RankedPoset:
    """``hemi_cube``, ``hemi_octahedron``, ``hemi_icosahedron`` or ``hemi_dodecahedron``."""
    if kind == "hemi_cube":
        return hemi_cube()
    if kind == "hemi_octahedron":
        return relabel(dual(hemi_cube()))
    if kind in ("hemi_icosahedron", "hemi_dodecahedron"):
        q = relabel(quotient(*_icosahedron_antipodal()))
        return q if kind == "hemi_icosahedron" else relabel(dual(q))
    raise BadParameter(f"unknown hemi kind {kind!r}")


def medial(p: RankedPoset) -> RankedPoset:
    """Vertices at the edges of ``p``; faces from its 2-faces and vertices."""
    if p.n != 3:
        raise BadParameter("medial needs a polyhedron")
    faces = {}
    for e in p.faces_of_rank(1):
        faces[f"M{e}"] = (0, ())
    for v in p.faces_of_rank(0):
        for f in p.faces_of_rank(2):
            if p.leq(v, f):
                mids = [e for e in p.covers(f) if v in p.covers(e)]
                faces[f"M{v}_{f}"] = (1, [f"M{e}" for e in mids])
    # faces at the old vertices sort first, so the base flag sits on one
    for v in p.faces_of_rank(0):
        faces[f"MA{v}"] = (2, [f"M{v}_{f}" for f in p.faces_of_rank(2) if p.leq(v, f)])
    for f in p.faces_of_rank(2):
        faces[f"MB{f}"] = (2, [f"M{v}_{f}" for v in p.faces_of_rank(0) if p.leq(v, f)])
    return relabel(RankedPoset.from_proper(3, faces))


class Lattice2:
    """Full-rank sublattice of Z^2 in Hermite normal form ``(a,0), (t,c)``."""

    def __init__(self, u, v):
        u1, u2 = u
        v1, v2 = v
        det = u1 * v2 - u2 * v1
        if det == 0:
            raise DegenerateQuotient("lattice basis is singular")
        g, s, t = _egcd(u2, v2)
        self.c = abs(g)
        if g < 0:
            s, t = -s, -t
        w1 = s * u1 + t * v1
        self.a = abs(det) // self.c
        self.t = w1 % self.a
        self.index = self.a * self.c

    def reduce(self, x, y):
        k = y // self.c
        y -= k * self.c
        x -= k * self.t
        return x % self.a, y

    def points(self):
        return [(x, y) for y in range(self.c) for x in range(self.a)]

    def basis(self):
        return (self.a, 0), (self.t, self.c)

    def __repr__(self):
        return f"Lattice2(({self.a},0),({self.t},{self.c}))"


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, s, t = _egcd(b, a % b)
    return g, t, s - (a // b) * t


def torus_map(lattice: Lattice2, check=True) -> RankedPoset:
    """The {4,4} map on the torus ``Z^2 / lattice``."""
    red = lattice.reduce

    def vid(x, y):
        return "v{}_{}".format(*red(x, y))

    faces = {}
    for x, y in lattice.points():
        faces[vid(x, y)] = (0, ())
    for x, y in lattice.points():
        faces["h{}_{}".format(x, y)] = (1, (vid(x, y), vid(x + 1, y)))
        faces["u{}_{}".format(x, y)] = (1, (vid(x, y), vid(x, y + 1)))
    for x, y in lattice.points():
        faces["s{}_{}".format(x, y)] = (2, (
            "h{}_{}".format(x, y), "h{}_{}".format(*red(x, y + 1)),
            "u{}_{}".format(x, y), "u{}_{}".format(*red(x + 1, y))))
    p = RankedPoset.from_proper(3, faces)
    if check and not validate_polytope(p).ok:
        raise DegenerateQuotient(f"{lattice!r} does not give a polytope")
    return p


def torus_44(b: int, c: int) -> RankedPoset:
    """{4,4}_(b,c): the torus map with lattice spanned by (b,c) and (-c,b)."""
    if b * b + c * c == 0:
        raise DegenerateQuotient("zero lattice vector")
    return torus_map(Lattice2((b, c), (-c, b)))


def torus_lattices(max_index):
    """Every sublattice of Z^2 with index <= max_index, in Hermite normal form."""
    for d in range(1, max_index + 1):
        for a in range(1, d + 1):
            if d % a:
                continue
            c = d // a
            for t in range(a):
                yield Lattice2((a, 0), (t, c))


@dataclass
class CatalogEntry:
    name: str
    builder: Callable[[], RankedPoset]
    expected: dict = field(default_factory=dict)

    def build(self):
        return _build(self.name, self.builder)


_BUILT = {}


def _build(name, builder):
    if name not in _BUILT:
        _BUILT[name] = builder()
    return _BUILT[name]


def _entries():
    cubo = lambda: medial(cube(3))
    icosi = lambda: medial(dodecahedron())
    out = [
        CatalogEntry("triangle", lambda: polygon(3), {"orbits": 1, "flags": 6}),
        CatalogEntry("pentagon", lambda: polygon(5), {"orbits": 1, "flags": 10}),
        CatalogEntry("hexagon", lambda: polygon(6), {"orbits": 1, "flags": 12}),
        CatalogEntry("tetrahedron", lambda: simplex(3), {"orbits": 1, "counts": [4, 6, 4]}),
        CatalogEntry("cube", lambda: cube(3),
                     {"orbits": 1, "counts": [8, 12, 6], "flags": 48, "group": 48}),
        CatalogEntry("octahedron", lambda: relabel(dual(cube(3))),
                     {"orbits": 1, "counts": [6, 12, 8]}),
        CatalogEntry("dodecahedron", dodecahedron, {"orbits": 1, "counts": [20, 30, 12]}),
        CatalogEntry("icosahedron", icosahedron, {"orbits": 1, "counts": [12, 30, 20]}),
        CatalogEntry("simplex4", lambda: simplex(4), {"orbits": 1, "counts": [5, 10, 10, 5]}),
        CatalogEntry("tesseract", lambda: cube(4), {"orbits": 1, "counts": [16, 32, 24, 8]}),
        CatalogEntry("hemi_cube", lambda: make_hemi("hemi_cube"),
                     {"orbits": 1, "counts": [4, 6, 3]}),
        CatalogEntry("hemi_dodecahedron", lambda: make_hemi("hemi_dodecahedron"),
                     {"orbits": 1, "counts": [10, 15, 6]}),
        CatalogEntry("cuboctahedron", cubo,
                     {"orbits": 2, "I": [0, 1], "counts": [12, 24, 14], "flags": 96,
                      "group": 48, "symbol": [[3, 4], [4, 4]]}),
        CatalogEntry("icosidodecahedron", icosi,
                     {"orbits": 2, "I": [0, 1], "counts": [30, 60, 32],
                      "symbol": [[3, 4], [5, 4]]}),
        CatalogEntry("rhombic_dodecahedron", lambda: relabel(dual(cubo())),
                     {"orbits": 2, "I": [1, 2], "counts": [14, 24, 12],
                      "symbol": [[4, 3], [4, 4]]}),
        CatalogEntry("rhombic_triacontahedron", lambda: relabel(dual(icosi())),
                     {"orbits": 2, "I": [1, 2], "counts": [32, 60, 30],
                      "symbol": [[4, 3], [4, 5]]}),
        CatalogEntry("hemi_cuboctahedron", lambda: medial(make_hemi("hemi_cube")),
                     {"orbits": 2, "chiral": False, "counts": [6, 12, 7]}),
        CatalogEntry("hemi_icosidodecahedron", lambda: medial(make_hemi("hemi_dodecahedron")),
                     {"orbits": 2, "chiral": False, "counts": [15, 30, 16]}),
        CatalogEntry("torus_2_1", lambda: torus_44(2, 1),
                     {"orbits": 2, "I": [], "chiral": True, "counts": [5, 10, 5],
                      "flags": 40, "group": 20}),
        CatalogEntry("torus_3_1", lambda: torus_44(3, 1),
                     {"orbits": 2, "I": [], "chiral": True, "counts": [10, 20, 10]}),
        CatalogEntry("torus_3_0", lambda: torus_44(3, 0),
                     {"orbits": 1, "counts": [9, 18, 9]}),
        CatalogEntry("torus_rect_3_4", lambda: torus_map(Lattice2((3, 0), (0, 4))),
                     {"orbits": 2, "I": [0, 2], "counts": [12, 24, 12]}),
    ]
    return out


CATALOG = {e.name: e for e in _entries()}


def catalog_names():
    return list(CATALOG)


def get(name) -> RankedPoset:
    if name in CATALOG:
        return CATALOG[name].build()
    for spec in search_specimens():
        if spec.name == name:
            return spec.build()
    raise BadParameter(f"unknown catalog entry {name!r}")


@dataclass
class SearchOutcome:
    examined: int
    valid: int
    class_counts: dict
    specimens: list


@lru_cache(maxsize=None)
def torus_search(max_index=25) -> SearchOutcome:
    """Classify every {4,4} torus quotient of index <= max_index.

    Specimens whose class complement is ``{j0, j0 + 2}`` are kept for the
    reflection-deficiency-2 identities.
    """
    from .classify import classify

    examined = valid = 0
    counts = {}
    specimens = []
    for lat in torus_lattices(max_index):
        examined += 1
        try:
            p = torus_map(lat)
        except DegenerateQuotient:
            continue
        valid += 1
        prof = classify(p)
        label = prof.label()
        counts[label] = counts.get(label, 0) + 1
        if prof.orbit_count == 2:
            comp = sorted(set(range(3)) - set(prof.class_type_set))
            if len(comp) == 2 and comp[1] - comp[0] == 2:
                (a, _), (t, c) = lat.basis()
                name = f"torus_hnf_{a}_{t}_{c}"
                specimens.append(CatalogEntry(name, lambda lat=lat: torus_map(lat),
                                              {"orbits": 2, "I": sorted(prof.class_type_set)}))
    return SearchOutcome(examined, valid, dict(sorted(counts.items())), specimens)


def search_specimens(max_index=25):
    return torus_search(max_index).specimens


def duals_and_search(max_index=25):
    """Rhombic duals plus the torus-search specimens."""
    base = [CATALOG["rhombic_dodecahedron"], CATALOG["rhombic_triacontahedron"]]
    return base + list(search_specimens(max_index))


def all_entries(include_search=True, max_index=25):
    out = list(CATALOG.values())
    if include_search:
        out += list(search_specimens(max_index))
    return out
