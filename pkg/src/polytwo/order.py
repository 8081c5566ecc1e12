"""Rebuilding the face poset from cosets of the distinguished subgroups.

A face of rank i is a right coset Γ_iφ (the face Φ_iφ).  When the class
type set misses exactly one rank j0, the j0-faces outside the orbit of Φ_{j0}
are cosets Γ'_{j0}φ of the stabilizer of the j0-face of Φ^{j0}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import CheckReport, analyze
from .errors import CaseUndefined, ReconstructionMismatch
from .generators import GeneratorSystem, distinguished_generators
from .groups import Group
from .poset import RankedPoset, is_isomorphic, validate_polytope
from .stabilizers import SubgroupFamily, build_family, build_primed_family

BASE, ADJACENT = "base", "adjacent"


@dataclass(frozen=True)
class CosetFace:
    rank: int
    family: str
    canonical: int
    keys: frozenset

    def __eq__(self, other):
        return (isinstance(other, CosetFace) and self.rank == other.rank
                and self.family == other.family and self.keys == other.keys)

    def __hash__(self):
        return hash((self.rank, self.family, self.canonical))

    @property
    def ident(self):
        tag = "b" if self.family == BASE else "a"
        return f"F{self.rank}{tag}{self.canonical}"


@dataclass
class OrderData:
    """Group data needed by the incidence criteria."""

    gs: GeneratorSystem
    family: SubgroupFamily
    primed: SubgroupFamily | None

    @property
    def n(self):
        return self.gs.n

    @property
    def special(self):
        """The rank j0 when the complement of I is {j0}, else None."""
        comp = self.gs.complement
        return next(iter(comp)) if len(comp) == 1 else None

    def stabilizer(self, rank, family=BASE) -> Group:
        if rank in (-1, self.n):
            return self.gs.group
        if family == BASE:
            return self.family.lower({rank})
        if self.primed is None or rank != self.special:
            raise CaseUndefined(f"no adjacent-family faces at rank {rank}")
        return self.primed.lower({rank})

    def face(self, rank, family, phi) -> CosetFace:
        H = self.stabilizer(rank, family)
        keys = frozenset(int(x) for x in phi.perm[H.key_array()])
        return CosetFace(rank, family, min(keys), keys)


def order_data(p: RankedPoset) -> OrderData:
    gs = distinguished_generators(p)
    fam = build_family(gs)
    primed = None
    if len(gs.complement) == 1:
        primed = build_primed_family(gs, next(iter(gs.complement)))
    return OrderData(gs, fam, primed)


def _shifted(data: OrderData, face: CosetFace, alpha):
    """Keys of the set α·Γ_jψ for the coset face Γ_jψ."""
    H = data.stabilizer(face.rank, face.family)
    rep = data.gs.group.element(face.canonical)
    # α h rep sends flag 0 to rep(h(α(0)))
    images = np.array([h.perm[alpha.key] for h in H], dtype=np.int64)
    return frozenset(int(x) for x in rep.perm[images])


def oracle_case(data: OrderData, a: CosetFace, b: CosetFace) -> str:
    i, j = a.rank, b.rank
    if i > j:
        raise CaseUndefined("first face must have the lower rank")
    comp = data.gs.complement
    j0 = data.special
    for f in (a, b):
        if f.family == ADJACENT and (j0 is None or f.rank != j0):
            raise CaseUndefined(f"adjacent family at rank {f.rank}")
    if i == j:
        if a.family != b.family:
            return "mixed"
        return "D" if a.family == ADJACENT else "A"
    if a.family == ADJACENT:
        return "C" if b.family == BASE else "undefined"
    if b.family == ADJACENT:
        return "C'"
    if len(comp) == 2 and comp == {i, j}:
        return "B"
    return "A"


def incidence_oracle(data: OrderData, a: CosetFace, b: CosetFace) -> bool:
    """Whether face ``a`` lies below (or equals) face ``b``, from cosets alone."""
    case = oracle_case(data, a, b)
    if case == "mixed":
        # same special rank, different orbits: never equal, never incident
        return False
    if case == "undefined":
        raise CaseUndefined(f"no criterion for {a.family}/{b.family} at ranks {a.rank},{b.rank}")
    if case == "B":
        alpha = data.gs.alpha2[(a.rank, b.rank)]
        return bool(a.keys & b.keys) or bool(a.keys & _shifted(data, b, alpha))
    return bool(a.keys & b.keys)


def coset_faces(data: OrderData):
    """All faces per rank as CosetFaces, keyed by rank."""
    G = data.gs.group
    elems = list(G)
    mat = np.stack([e.perm for e in elems])
    out = {}
    for r in range(-1, data.n + 1):
        fams = [BASE]
        if r == data.special:
            fams.append(ADJACENT)
        faces = []
        for fam in fams:
            H = data.stabilizer(r, fam)
            mins = mat[:, H.key_array()].min(axis=1)
            seen = set()
            for e, m in zip(elems, mins):
                m = int(m)
                if m not in seen:
                    seen.add(m)
                    faces.append(data.face(r, fam, G.element(m)))
        out[r] = sorted(faces, key=lambda f: (f.family, f.canonical))
    return out


def rebuild_order(p: RankedPoset, data: OrderData | None = None) -> RankedPoset:
    """Assemble the poset of coset faces under the incidence criteria."""
    data = data or order_data(p)
    n = data.n
    faces = coset_faces(data)
    proper = {}
    for r in range(0, n):
        for f in faces[r]:
            below = []
            if r > 0:
                below = [g.ident for g in faces[r - 1] if incidence_oracle(data, g, f)]
            proper[f.ident] = (r, below)
    try:
        q = RankedPoset.from_proper(n, proper)
    except Exception as exc:
        raise ReconstructionMismatch(str(exc)) from exc
    # the criteria must agree with the transitive closure for every rank pair
    for r in range(0, n):
        for s in range(r + 1, n):
            for a in faces[r]:
                for b in faces[s]:
                    if incidence_oracle(data, a, b) != q.leq(a.ident, b.ident):
                        raise ReconstructionMismatch(
                            f"criterion and closure disagree on {a.ident} <= {b.ident}")
    if not validate_polytope(q).ok:
        raise ReconstructionMismatch("rebuilt poset is not a polytope")
    return q


def roundtrip_check(p: RankedPoset) -> bool:
    return is_isomorphic(p, rebuild_order(p))


def face_to_coset(data: OrderData, face) -> CosetFace:
    """The coset face standing for an actual face of the polytope."""
    a = analyze(data.gs.graph.poset)
    g = a.graph
    p = g.poset
    r = p.rank(face)
    base = data.gs.base_flag
    G = data.gs.group
    if r in (-1, data.n):
        return data.face(r, BASE, G.identity())
    ks = g.flags_containing([face])
    same = [k for k in ks if a.labels[k] == a.labels[base]]
    if same:
        phi = _mover(a, base, same[0])
        return data.face(r, BASE, phi)
    adj = int(g.adj[r, base])
    phi = _mover(a, adj, ks[0])
    return data.face(r, ADJACENT, phi)


def _mover(a, src, dst):
    """The automorphism taking flag ``src`` to ``dst``."""
    for x in a.group:
        if x.act(src) == dst:
            return x
    raise ReconstructionMismatch(f"flags {src} and {dst} are not equivalent")


def verify_oracle_against_poset(p: RankedPoset, data: OrderData | None = None) -> CheckReport:
    """Exhaustive comparison of the criteria with the real order."""
    data = data or order_data(p)
    rep = CheckReport("incidence_oracle")
    ids = p.face_ids()
    cos = {f: face_to_coset(data, f) for f in ids}
    for x in ids:
        for y in ids:
            if p.rank(x) > p.rank(y):
                continue
            want = x == y if p.rank(x) == p.rank(y) else p.leq(x, y)
            got = incidence_oracle(data, cos[x], cos[y])
            rep.add(got == want, {"a": x, "b": y, "expected": want, "got": got})
    return rep


def coset_count_check(p: RankedPoset, data: OrderData | None = None) -> CheckReport:
    """Distinct cosets per rank equal the face counts via |Γ| / |stabilizer|."""
    data = data or order_data(p)
    faces = coset_faces(data)
    G = data.gs.group
    rep = CheckReport("coset_counts")
    counts = p.face_counts()
    table = {}
    for r in range(0, data.n):
        fams = {}
        for f in faces[r]:
            fams[f.family] = fams.get(f.family, 0) + 1
        idx = {fam: len(G) // len(data.stabilizer(r, fam)) for fam in fams}
        table[r] = {"cosets": fams, "index": idx, "faces": counts[r]}
        rep.add(fams == idx and sum(fams.values()) == counts[r], {"rank": r, **table[r]})
        # actual faces and coset faces correspond one to one
        mapped = {face_to_coset(data, g) for g in p.faces_of_rank(r)}
        rep.add(mapped == set(faces[r]), {"rank": r, "check": "bijection"})
    rep.details = table
    return rep
