"""Automorphism groups of polytopes as explicit sets of flag permutations.

Automorphisms act on flags from the right and compose left to right:
``(a * b)`` first applies ``a`` then ``b``, so the flag ``x`` goes to
``b.perm[a.perm[x]]``.  Because the action is free, an automorphism is
determined by the image of flag 0; groups are indexed by that image.
"""

from __future__ import annotations

import os
from collections import deque

import numpy as np

from .errors import BadRank, GroupTooLarge, NotInParent
from .flags import FlagGraph

DEFAULT_CAP = 10**6
_CHUNK = 256


def group_cap() -> int:
    raw = os.environ.get("POLYTWO_GROUP_CAP")
    return int(raw) if raw else DEFAULT_CAP


class Automorphism:
    __slots__ = ("perm", "graph", "_hash")

    def __init__(self, perm, graph: FlagGraph):
        perm = np.asarray(perm, dtype=np.int64)
        perm.setflags(write=False)
        self.perm = perm
        self.graph = graph
        self._hash = None

    @classmethod
    def identity(cls, graph):
        return cls(np.arange(len(graph), dtype=np.int64), graph)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(other.perm[self.perm], self.graph)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Automorphism.identity(self.graph)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        return Automorphism(np.argsort(self.perm), self.graph)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and np.array_equal(self.perm, other.perm)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.perm.tobytes())
        return self._hash

    def __lt__(self, other):
        return tuple(self.perm) < tuple(other.perm)

    def __repr__(self):
        return f"Automorphism(flag 0 -> {int(self.perm[0])})"

    @property
    def key(self) -> int:
        return int(self.perm[0])

    def is_identity(self):
        return bool(self.perm[0] == 0)

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity():
            x = x * self
            k += 1
        return k

    def act(self, flag: int) -> int:
        return int(self.perm[flag])

    def face_image(self, face):
        g = self.graph
        p = g.poset
        if face in (p.bottom, p.top):
            return face
        k = g.flag_containing(face)
        return g.flags[int(self.perm[k])][p.rank(face)]

    @property
    def face_perm(self):
        return {f: self.face_image(f) for f in self.graph.poset.face_ids()}


def _extend_images(ga, gb, source, targets):
    """Images of every flag of ``ga`` for each candidate target in ``gb``.

    Returns ``(images, ok)``: ``images[t]`` is the word-transported map and
    ``ok[t]`` says whether it is single-valued and adjacency preserving.
    """
    order, parent, letter, _ = ga.bfs_tree(source)
    targets = np.asarray(targets, dtype=np.int64)
    size = len(ga)
    if len(order) != size:
        return np.zeros((len(targets), size), dtype=np.int64), np.zeros(len(targets), bool)
    images = np.empty((len(targets), size), dtype=np.int64)
    images[:, source] = targets
    adj_b = gb.adj
    # process the BFS tree level by level so each level is one gather
    depth = np.zeros(size, dtype=np.int64)
    for v in order[1:]:
        depth[v] = depth[parent[v]] + 1
    for d in range(1, int(depth.max()) + 1 if size > 1 else 1):
        nodes = order[depth[order] == d]
        images[:, nodes] = adj_b[letter[nodes][None, :], images[:, parent[nodes]]]
    ok = np.ones(len(targets), dtype=bool)
    for i in range(ga.n):
        ok &= np.all(images[:, ga.adj[i]] == adj_b[i][images], axis=1)
    if ok.any():
        srt = np.sort(images[ok], axis=1)
        bij = np.all(srt == np.arange(size)[None, :], axis=1)
        ok[np.flatnonzero(ok)] = bij
    return images, ok


def extend_between(ga: FlagGraph, gb: FlagGraph, source: int, target: int):
    """Flag map ``ga -> gb`` sending ``source`` to ``target``, or None."""
    if ga.n != gb.n or len(ga) != len(gb):
        return None
    images, ok = _extend_images(ga, gb, source, [target])
    return images[0] if ok[0] else None


def extend_flag_map(g: FlagGraph, source: int, target: int):
    """The automorphism taking flag ``source`` to ``target``, if one exists."""
    perm = extend_between(g, g, source, target)
    return None if perm is None else Automorphism(perm, g)


class Group:
    """A finite group of automorphisms stored as an explicit element set."""

    def __init__(self, graph: FlagGraph, elements, generators=(), base_flag=0):
        self.graph = graph
        self._by_key = {}
        for e in elements:
            self._by_key[e.key] = e
        if len(self._by_key) > group_cap():
            raise GroupTooLarge(f"{len(self._by_key)} elements exceeds cap {group_cap()}")
        self.generators = list(generators)
        self.base_flag = base_flag
        self._keys = None

    def __len__(self):
        return len(self._by_key)

    order = property(__len__)

    def __iter__(self):
        return (self._by_key[k] for k in sorted(self._by_key))

    def __contains__(self, x: Automorphism):
        return self._by_key.get(x.key) == x

    def __eq__(self, other):
        return isinstance(other, Group) and self.keys == other.keys

    def __hash__(self):
        return hash(self.keys)

    def __repr__(self):
        return f"Group(order={len(self)})"

    @property
    def elements(self) -> frozenset:
        return frozenset(self._by_key.values())

    @property
    def keys(self) -> frozenset:
        if self._keys is None:
            self._keys = frozenset(self._by_key)
        return self._keys

    def key_array(self):
        return np.array(sorted(self._by_key), dtype=np.int64)

    def element(self, key):
        return self._by_key[key]

    def identity(self):
        return Automorphism.identity(self.graph)

    def issubgroup(self, other):
        return self.keys <= other.keys

    def intersect(self, other: "Group") -> "Group":
        return Group(self.graph, [self._by_key[k] for k in self.keys & other.keys])

    def conjugated_by(self, g: Automorphism) -> "Group":
        """The subgroup ``{g^-1 h g : h in self}``."""
        gi = g.inverse()
        return Group(self.graph, [gi * h * g for h in self])

    def product_set(self, other: "Group") -> frozenset:
        """Keys of the set ``{a b : a in self, b in other}``."""
        out = set()
        for b in other:
            out.update(int(x) for x in b.perm[self.key_array()])
        return frozenset(out)

    def random_element(self, rng):
        keys = sorted(self._by_key)
        return self._by_key[keys[int(rng.integers(len(keys)))]]


def automorphism_group(g: FlagGraph) -> Group:
    """All automorphisms, by extending flag 0 onto every flag."""
    size = len(g)
    found = []
    for lo in range(0, size, _CHUNK):
        targets = np.arange(lo, min(size, lo + _CHUNK))
        images, ok = _extend_images(g, g, 0, targets)
        for t in np.flatnonzero(ok):
            found.append(Automorphism(images[t], g))
            if len(found) > group_cap():
                raise GroupTooLarge(f"more than {group_cap()} automorphisms")
    return Group(g, found, generators=found, base_flag=0)


def generate_subgroup(parent: Group, gens) -> Group:
    """Closure of ``gens`` inside ``parent``.

    Right multiplication by a generator moves the key (image of flag 0)
    through that generator's permutation, so the closure is the orbit of
    flag 0 under the generators, read back as parent elements.
    """
    gens = list(gens)
    for x in gens:
        if x not in parent:
            raise NotInParent(f"{x!r} is not in the parent group")
    perms = [x.perm for x in gens] + [x.inverse().perm for x in gens]
    seen = {0}
    queue = deque([0])
    cap = group_cap()
    while queue:
        k = queue.popleft()
        for perm in perms:
            m = int(perm[k])
            if m not in seen:
                seen.add(m)
                if len(seen) > cap:
                    raise GroupTooLarge(f"subgroup exceeds cap {cap}")
                queue.append(m)
    return Group(parent.graph, [parent.element(k) for k in seen], generators=gens,
                 base_flag=parent.base_flag)


def flag_orbit_labels(group: Group) -> np.ndarray:
    """Orbit label per flag; labels numbered by least member."""
    g = group.graph
    size = len(g)
    labels = np.full(size, -1, dtype=np.int64)
    mat = np.stack([e.perm for e in group]) if len(group) else np.zeros((0, size), np.int64)
    nxt = 0
    for k in range(size):
        if labels[k] < 0:
            labels[mat[:, k]] = nxt
            nxt += 1
    return labels


def _item_orbits(group, item_of_flag):
    """Partition of items ``item_of_flag(k)`` induced by flag orbits.

    Items of two flags in one flag orbit are equivalent (the element moving
    one flag to the other moves the items alike), and every equivalence
    arises this way, so components of the item/flag-orbit graph are orbits.
    """
    labels = flag_orbit_labels(group)
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for k in range(len(labels)):
        item = ("i", item_of_flag(k))
        lab = ("o", int(labels[k]))
        parent.setdefault(item, item)
        parent.setdefault(lab, lab)
        union(lab, item)
    classes = {}
    for x in parent:
        if x[0] == "i":
            classes.setdefault(find(x), []).append(x[1])
    return sorted(sorted(c) for c in classes.values())


def orbits(group: Group, action="flags"):
    """Orbit partition for ``"flags"``, ``("faces", r)`` or ``("sections", i, j)``."""
    g = group.graph
    n = g.n
    if action == "flags":
        labels = flag_orbit_labels(group)
        parts = {}
        for k, lab in enumerate(labels):
            parts.setdefault(int(lab), []).append(k)
        return [parts[k] for k in sorted(parts)]
    kind = action[0]
    if kind == "faces":
        r = action[1]
        if not -1 <= r <= n:
            raise BadRank(f"rank {r} outside -1..{n}")
        return _item_orbits(group, lambda k: g.face(k, r))
    if kind == "sections":
        i, j = action[1], action[2]
        if not (-1 <= i <= j <= n):
            raise BadRank(f"section ranks ({i},{j}) outside -1..{n}")
        return _item_orbits(group, lambda k: (g.face(k, i), g.face(k, j)))
    raise ValueError(f"unknown action {action!r}")


class Coset:
    """A coset ``H g`` (side ``right``) or ``g H`` (side ``left``)."""

    def __init__(self, subgroup: Group, representative: Automorphism, side="right"):
        if side not in ("left", "right"):
            raise ValueError(side)
        self.subgroup = subgroup
        self.representative = representative
        self.side = side
        self._keys = None

    def __len__(self):
        return len(self.subgroup)

    def __repr__(self):
        return f"Coset({self.side}, |H|={len(self.subgroup)}, rep={self.representative!r})"

    @property
    def keys(self) -> frozenset:
        if self._keys is None:
            g = self.representative
            if self.side == "right":
                self._keys = frozenset(int(x) for x in g.perm[self.subgroup.key_array()])
            else:
                gk = g.key
                self._keys = frozenset(int(h.perm[gk]) for h in self.subgroup)
        return self._keys

    def elements(self):
        g = self.representative
        if self.side == "right":
            return [h * g for h in self.subgroup]
        return [g * h for h in self.subgroup]

    def __contains__(self, x: Automorphism):
        g = self.representative
        if self.side == "right":
            return x * g.inverse() in self.subgroup
        return g.inverse() * x in self.subgroup

    def canonical_key(self) -> int:
        return min(self.keys)

    def __eq__(self, other):
        return isinstance(other, Coset) and self.keys == other.keys

    def __hash__(self):
        return hash(self.keys)


def coset_intersects(a: Coset, b: Coset) -> bool:
    """Whether two cosets share an element (enumerate the smaller one)."""
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    return any(x in big for x in small.elements())
