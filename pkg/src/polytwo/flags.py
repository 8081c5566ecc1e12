"""Flags, i-adjacency and adjacency words."""

from __future__ import annotations

from collections import deque

import numpy as np

from .errors import BadLetter, NoPath
from .poset import RankedPoset


class FlagGraph:
    """All flags of a polytope with the ``n`` adjacency involutions.

    ``flags[k]`` is a tuple of face ids for ranks ``0..n-1``; flags are
    sorted lexicographically so index 0 is the canonical base flag.
    ``adj`` is an ``(n, F)`` integer array: ``adj[i, k]`` is the index of the
    i-adjacent flag of flag ``k``.
    """

    def __init__(self, poset: RankedPoset, flags, adj):
        self.poset = poset
        self.n = poset.n
        self.flags = flags
        self.index = {f: k for k, f in enumerate(flags)}
        self.adj = adj
        self.adj.setflags(write=False)
        self._bfs_cache = {}
        self._face_flag = None

    def __len__(self):
        return len(self.flags)

    def __repr__(self):
        return f"FlagGraph(n={self.n}, flags={len(self.flags)})"

    base_flag = 0

    def face(self, flag, rank):
        """Face of the given rank in a flag; improper ranks allowed."""
        if rank == -1:
            return self.poset.bottom
        if rank == self.n:
            return self.poset.top
        return self.flags[flag][rank]

    def flag_containing(self, face):
        """Least flag index containing ``face``."""
        if self._face_flag is None:
            table = {}
            for k in range(len(self.flags) - 1, -1, -1):
                for f in self.flags[k]:
                    table[f] = k
            self._face_flag = table
        if face in (self.poset.bottom, self.poset.top):
            return 0
        return self._face_flag[face]

    def flags_containing(self, faces):
        faces = set(faces) - {self.poset.bottom, self.poset.top}
        return [k for k, f in enumerate(self.flags) if faces.issubset(f)]

    def bfs_tree(self, start, letters=None):
        """BFS spanning tree from ``start`` restricted to ``letters``.

        Returns ``(order, parent, letter, dist)`` arrays; ``parent`` and
        ``letter`` are -1 for the root and unreached flags.
        """
        letters = tuple(range(self.n)) if letters is None else tuple(sorted(letters))
        key = (start, letters)
        hit = self._bfs_cache.get(key)
        if hit is not None:
            return hit
        size = len(self.flags)
        parent = np.full(size, -1, dtype=np.int64)
        letter = np.full(size, -1, dtype=np.int64)
        dist = np.full(size, -1, dtype=np.int64)
        dist[start] = 0
        order = [start]
        queue = deque([start])
        adj = self.adj
        while queue:
            u = queue.popleft()
            for i in letters:
                v = int(adj[i, u])
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    letter[v] = i
                    order.append(v)
                    queue.append(v)
        result = (np.array(order, dtype=np.int64), parent, letter, dist)
        if len(self._bfs_cache) < 4096:
            self._bfs_cache[key] = result
        return result


def build_flag_graph(p: RankedPoset) -> FlagGraph:
    n = p.n
    if n <= 0:
        return FlagGraph(p, [()], np.zeros((0, 1), dtype=np.int64))
    flags = []

    def walk(f, acc):
        if len(acc) == n:
            flags.append(tuple(acc))
            return
        for g in sorted(p.covered_by(f)):
            walk(g, acc + [g])

    for v in p.faces_of_rank(0):
        walk(v, [v])
    flags.sort()
    index = {f: k for k, f in enumerate(flags)}
    bot, top = p.bottom, p.top
    adj = np.empty((n, len(flags)), dtype=np.int64)
    for k, flag in enumerate(flags):
        for i in range(n):
            lo = flag[i - 1] if i > 0 else bot
            hi = flag[i + 1] if i < n - 1 else top
            mids = [h for h in p.covered_by(lo) if h in p.covers(hi) and h != flag[i]]
            if len(mids) != 1:
                raise ValueError(f"diamond condition fails at flag {flag}, rank {i}")
            adj[i, k] = index[flag[:i] + (mids[0],) + flag[i + 1:]]
    return FlagGraph(p, flags, adj)


def apply_word(g: FlagGraph, start: int, word) -> int:
    """Flag reached from ``start`` by successive adjacencies in ``word``."""
    k = start
    for i in word:
        if not 0 <= i < g.n:
            raise BadLetter(f"letter {i} outside 0..{g.n - 1}")
        k = int(g.adj[i, k])
    return k


def word_from_tree(parent, letter, target):
    word = []
    while parent[target] >= 0:
        word.append(int(letter[target]))
        target = int(parent[target])
    word.reverse()
    return tuple(word)


def connecting_word(g: FlagGraph, source: int, target: int, forbidden=()) -> tuple:
    """Shortest word avoiding ``forbidden`` ranks taking ``source`` to ``target``."""
    allowed = [i for i in range(g.n) if i not in set(forbidden)]
    _, parent, letter, dist = g.bfs_tree(source, allowed)
    if dist[target] < 0:
        raise NoPath(f"flag {target} not reachable from {source} avoiding {sorted(forbidden)}")
    return word_from_tree(parent, letter, target)


def export_flags(g: FlagGraph) -> str:
    """Edge-coloured adjacency lists, one line per flag."""
    lines = []
    for k in range(len(g)):
        lines.append(f"{k} : " + " ".join(str(int(g.adj[i, k])) for i in range(g.n)))
    return "\n".join(lines).rstrip() + "\n"
