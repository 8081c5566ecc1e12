"""Independent reference computations used to freeze expected values.

Nothing here touches the flag graph or the group engine: automorphisms come
from networkx isomorphism search on the rank-labelled Hasse diagram, and
flags come from a plain recursive chain walk.
"""

import networkx as nx


def hasse_graph(p):
    g = nx.Graph()
    for f in p.face_ids():
        g.add_node(f, rank=p.rank(f))
    for f in p.face_ids():
        for h in p.covers(f):
            g.add_edge(f, h)
    return g


def face_automorphisms(p):
    """All rank-preserving automorphisms of the Hasse diagram, as dicts.

    Plain backtracking: faces are visited in BFS order of the Hasse diagram,
    each candidate image must be a neighbour of the image of the face's BFS
    parent, and all edges to already mapped faces are checked.
    """
    g = hasse_graph(p)
    nodes = [n for n in g if p.rank(n) not in (-1, p.n)]
    if not nodes:
        return [{f: f for f in g}]
    start = nodes[0]
    order, parent = [start], {start: None}
    for u in order:
        for v in sorted(g[u]):
            if v in parent or v not in nodes:
                continue
            parent[v] = u
            order.append(v)
    nbrs = {u: set(g[u]) for u in g}
    out = []
    fixed = {p.bottom: p.bottom, p.top: p.top}

    def extend(k, fmap, used):
        if k == len(order):
            out.append(dict(fmap))
            return
        u = order[k]
        if parent[u] is None:
            cands = [x for x in nodes if p.rank(x) == p.rank(u)]
        else:
            cands = [x for x in nbrs[fmap[parent[u]]] if x in rank_ok[u]]
        for x in cands:
            if x in used:
                continue
            if any((w in fmap) and (fmap[w] not in nbrs[x]) for w in nbrs[u]):
                continue
            if len([w for w in nbrs[x] if w in used]) != len([w for w in nbrs[u] if w in fmap]):
                continue
            fmap[u] = x
            used.add(x)
            extend(k + 1, fmap, used)
            del fmap[u]
            used.discard(x)

    rank_ok = {u: {x for x in nodes if p.rank(x) == p.rank(u)} for u in nodes}
    extend(0, dict(fixed), set(fixed.values()))
    return out


def chains(p):
    """Maximal chains as tuples of proper faces, rank 0 upward, sorted."""
    out = []

    def walk(f, acc):
        if len(acc) == p.n:
            out.append(tuple(acc))
            return
        for h in p.covered_by(f):
            walk(h, acc + [h])

    if p.n <= 0:
        return [()]
    for v in p.faces_of_rank(0):
        walk(v, [v])
    return sorted(out)


def adjacent(p, flag, i):
    lo = flag[i - 1] if i > 0 else p.bottom
    hi = flag[i + 1] if i < p.n - 1 else p.top
    (x,) = [h for h in p.covered_by(lo) if h in p.covers(hi) and h != flag[i]]
    return flag[:i] + (x,) + flag[i + 1:]


def flag_orbits(p):
    """Partition of chains under the face automorphisms."""
    autos = face_automorphisms(p)
    label = {}
    nxt = 0
    for c in chains(p):
        if c in label:
            continue
        for a in autos:
            label[tuple(a[f] for f in c)] = nxt
        nxt += 1
    return label, nxt


def class_type_set(p):
    label, count = flag_orbits(p)
    base = chains(p)[0]
    return count, {i for i in range(p.n) if label[adjacent(p, base, i)] == label[base]}


def two_section_sizes(p, flag):
    """Number of i-faces between the (i-2)- and (i+1)-faces of ``flag``."""
    def face(r):
        if r < 0:
            return p.bottom
        if r >= p.n:
            return p.top
        return flag[r]
    return tuple(sum(1 for f in p.covers(face(i + 1)) if p.leq(face(i - 2), f))
                 for i in range(1, p.n))


def symbol_rows(p):
    """Set of 2-section rows over all flags (one per orbit when two-orbit)."""
    return {two_section_sizes(p, c) for c in chains(p)}
