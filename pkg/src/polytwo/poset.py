"""Finite ranked posets and the abstract-polytope axioms.

Faces are identified by strings.  The least and greatest faces carry the
reserved ids ``BOT`` and ``TOP``; every other face is *proper*.  A rank -1
poset has a single face, ``BOT``, which is then also the greatest face.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import MalformedInput, NotComparable

BOT = "BOT"
TOP = "TOP"

ID_RE = re.compile(r"^[A-Za-z0-9_]+$")


class Face(NamedTuple):
    id: str
    rank: int


def face_key(face_id, rank):
    """Canonical ordering: by rank, then by id."""
    return (rank, face_id)


class RankedPoset:
    """A ranked poset given by its cover relation.

    ``covers[f]`` is the set of faces of rank ``rank(f) - 1`` lying directly
    below ``f``.  The order is the reflexive-transitive closure of covers.
    Instances are immutable; derived tables are computed on construction.
    """

    def __init__(self, n: int, ranks: Mapping[str, int], covers: Mapping[str, Iterable[str]]):
        if n < -1:
            raise MalformedInput(f"rank must be >= -1, got {n}")
        self.n = n
        self._rank = dict(ranks)
        down = {}
        for f, r in self._rank.items():
            if not isinstance(f, str) or not ID_RE.match(f):
                raise MalformedInput(f"bad face id {f!r}")
            if not -1 <= r <= n:
                raise MalformedInput(f"face {f} has rank {r} outside -1..{n}")
            down[f] = set()
        for f, below in covers.items():
            if f not in self._rank:
                raise MalformedInput(f"covers entry for unknown face {f!r}")
            for g in below:
                if g not in self._rank:
                    raise MalformedInput(f"face {f} covers unknown face {g!r}")
                if self._rank[g] != self._rank[f] - 1:
                    raise MalformedInput(
                        f"face {f} (rank {self._rank[f]}) covers {g} (rank {self._rank[g]})")
                down[f].add(g)
        self._down = {f: frozenset(s) for f, s in down.items()}
        up = {f: set() for f in self._rank}
        for f, below in self._down.items():
            for g in below:
                up[g].add(f)
        self._up = {f: frozenset(s) for f, s in up.items()}
        self._by_rank = {r: [] for r in range(-1, n + 1)}
        for f in sorted(self._rank, key=lambda f: (self._rank[f], f)):
            self._by_rank[self._rank[f]].append(f)
        self._below = None

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_proper(cls, n, faces: Mapping[str, tuple]):
        """Build from proper faces only: ``faces[id] = (rank, covered_ids)``.

        ``BOT`` and ``TOP`` are added; rank-0 faces cover ``BOT`` and ``TOP``
        covers every face of rank ``n - 1``.
        """
        if n == -1:
            if faces:
                raise MalformedInput("rank -1 poset has no proper faces")
            return cls(-1, {BOT: -1}, {})
        ranks = {BOT: -1, TOP: n}
        covers = {}
        for f, (r, below) in faces.items():
            if f in (BOT, TOP):
                raise MalformedInput(f"{f} is reserved")
            ranks[f] = r
            covers[f] = [BOT] if r == 0 else list(below)
            if r == 0 and below:
                raise MalformedInput(f"vertex {f} lists covered faces")
        covers[TOP] = [f for f, (r, _) in faces.items() if r == n - 1] if n > 0 else [BOT]
        return cls(n, ranks, covers)

    # -- basic queries ---------------------------------------------------

    def __repr__(self):
        counts = "/".join(str(len(self._by_rank[r])) for r in range(0, self.n))
        return f"RankedPoset(n={self.n}, faces={counts or '-'})"

    def __contains__(self, f):
        return f in self._rank

    def __len__(self):
        return len(self._rank)

    @property
    def faces(self):
        return [Face(f, self._rank[f]) for r in range(-1, self.n + 1) for f in self._by_rank[r]]

    def face_ids(self):
        return [f for r in range(-1, self.n + 1) for f in self._by_rank[r]]

    def rank(self, f) -> int:
        return self._rank[f]

    def faces_of_rank(self, r) -> list[str]:
        return list(self._by_rank.get(r, ()))

    def face_counts(self) -> list[int]:
        """Number of faces of each proper rank 0..n-1."""
        return [len(self._by_rank[r]) for r in range(0, self.n)]

    def covers(self, f) -> frozenset:
        return self._down[f]

    def covered_by(self, f) -> frozenset:
        return self._up[f]

    @property
    def bottom(self):
        lows = self._by_rank[-1]
        if len(lows) != 1:
            raise MalformedInput("no unique least face")
        return lows[0]

    @property
    def top(self):
        highs = self._by_rank[self.n]
        if len(highs) != 1:
            raise MalformedInput("no unique greatest face")
        return highs[0]

    def below(self, f) -> frozenset:
        """All faces ``g <= f``."""
        if self._below is None:
            below = {}
            for r in range(-1, self.n + 1):
                for g in self._by_rank[r]:
                    acc = {g}
                    for h in self._down[g]:
                        acc |= below[h]
                    below[g] = frozenset(acc)
            self._below = below
        return self._below[f]

    def leq(self, a, b) -> bool:
        return a in self.below(b)

    def interval(self, a, b) -> list[str]:
        """Faces ``h`` with ``a <= h <= b``, canonically ordered."""
        if not self.leq(a, b):
            raise NotComparable(f"{a} is not below {b}")
        lo = self.below(b)
        return [h for h in self.face_ids() if h in lo and self.leq(a, h)]

    def is_chain(self, ids) -> bool:
        ids = sorted(set(ids), key=lambda f: (self._rank[f], f))
        return all(self.leq(ids[k], ids[k + 1]) for k in range(len(ids) - 1))

    def covers_table(self):
        """``{face: sorted covered ids}`` for every face, canonical order."""
        return {f: sorted(self._down[f]) for f in self.face_ids()}

    def without_faces(self, ids):
        """Copy with the given faces and all cover entries touching them removed."""
        ids = set(ids)
        ranks = {f: r for f, r in self._rank.items() if f not in ids}
        covers = {f: [g for g in self._down[f] if g not in ids] for f in ranks}
        return RankedPoset(self.n, ranks, covers)


@dataclass(frozen=True)
class SectionHandle:
    parent: RankedPoset
    bottom: str
    top: str

    @property
    def rank(self):
        return self.parent.rank(self.top) - self.parent.rank(self.bottom) - 1


@dataclass
class ValidationReport:
    """Pass/fail per polytope axiom, with failure witnesses."""

    unique_extremes: bool
    flags_full_length: bool
    diamond: bool
    strongly_flag_connected: bool
    diamond_failures: list = field(default_factory=list)
    disconnected_sections: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return (self.unique_extremes and self.flags_full_length
                and self.diamond and self.strongly_flag_connected)

    def axioms(self):
        return {
            "P1_unique_extremes": self.unique_extremes,
            "P2_flags_full_length": self.flags_full_length,
            "P3_diamond": self.diamond,
            "P4_strong_flag_connectivity": self.strongly_flag_connected,
        }


def _chains(p, lo, hi):
    """Maximal chains strictly between ``lo`` and ``hi`` (tuples, rank ascending)."""
    out = []
    target = p.rank(hi)

    def walk(f, acc):
        if p.rank(f) == target - 1:
            if hi in p.covered_by(f):
                out.append(tuple(acc))
            return
        for g in sorted(p.covered_by(f)):
            if p.leq(g, hi):
                walk(g, acc + [g])

    if p.rank(hi) - p.rank(lo) == 1:
        return [()] if lo in p.covers(hi) else []
    for g in sorted(p.covered_by(lo)):
        if p.leq(g, hi):
            walk(g, [g])
    return out


def _chains_connected(chains):
    """Connectivity of chains under single-position replacement."""
    if len(chains) <= 1:
        return True
    parent = list(range(len(chains)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    width = len(chains[0])
    for pos in range(width):
        seen = {}
        for k, c in enumerate(chains):
            key = c[:pos] + c[pos + 1:]
            if key in seen:
                parent[find(k)] = find(seen[key])
            else:
                seen[key] = k
    root = find(0)
    return all(find(k) == root for k in range(len(chains)))


def validate_polytope(candidate: RankedPoset) -> ValidationReport:
    p = candidate
    n = p.n
    lows, highs = p.faces_of_rank(-1), p.faces_of_rank(n)
    p1 = len(lows) == 1 and len(highs) == 1
    notes = []
    if p1:
        bot, top = lows[0], highs[0]
        stray = [f for f in p.face_ids() if not (p.leq(bot, f) and p.leq(f, top))]
        if stray:
            p1 = False
            notes.append(f"faces not between extremes: {stray[:5]}")
    report = ValidationReport(p1, False, False, False, notes=notes)
    if not p1:
        return report
    if n == -1:
        report.flags_full_length = report.diamond = report.strongly_flag_connected = True
        return report

    # covers only span one rank, so every maximal chain has n + 2 faces as
    # long as no face is stranded; check by enumerating them.
    flags = _chains(p, bot, top)
    report.flags_full_length = bool(flags) and all(len(c) == n for c in flags) and all(
        any(f in c for c in flags) for f in p.face_ids() if f not in (bot, top))

    failures = []
    for f in p.face_ids():
        r = p.rank(f)
        if r > n - 2:
            continue
        mids = p.covered_by(f)
        over = {}
        for h in mids:
            for g in p.covered_by(h):
                over[g] = over.get(g, 0) + 1
        for g in sorted(over):
            if over[g] != 2:
                failures.append((f, g, over[g]))
    report.diamond = not failures
    report.diamond_failures = failures

    disconnected = []
    for lo in p.face_ids():
        for hi in p.face_ids():
            if p.rank(hi) - p.rank(lo) - 1 >= 2 and p.leq(lo, hi):
                if not _chains_connected(_chains(p, lo, hi)):
                    disconnected.append((lo, hi))
    report.strongly_flag_connected = not disconnected
    report.disconnected_sections = disconnected
    return report


def section(handle: SectionHandle) -> RankedPoset:
    """The poset ``{H : bottom <= H <= top}`` re-ranked so bottom has rank -1."""
    p, lo, hi = handle.parent, handle.bottom, handle.top
    members = p.interval(lo, hi)
    shift = p.rank(lo) + 1
    m = p.rank(hi) - shift
    if m == -1:
        return RankedPoset(-1, {BOT: -1}, {})
    rename = {f: f for f in members}
    rename[lo], rename[hi] = BOT, TOP
    keep = set(members)
    ranks = {rename[f]: p.rank(f) - shift for f in members}
    covers = {rename[f]: [rename[g] for g in p.covers(f) if g in keep] for f in members}
    return RankedPoset(m, ranks, covers)


def dual(p: RankedPoset) -> RankedPoset:
    """Reverse the order; rank ``r`` becomes ``n - 1 - r``."""
    n = p.n
    if n == -1:
        return p
    bot, top = p.bottom, p.top
    rename = {f: f for f in p.face_ids()}
    rename[bot], rename[top] = TOP, BOT
    ranks = {rename[f]: n - 1 - p.rank(f) for f in p.face_ids()}
    covers = {rename[f]: [rename[g] for g in p.covered_by(f)] for f in p.face_ids()}
    return RankedPoset(n, ranks, covers)


def is_isomorphic(a: RankedPoset, b: RankedPoset) -> bool:
    """Rank- and order-preserving bijection test via flag-map extension."""
    from .flags import build_flag_graph
    from .groups import extend_between

    if a.n != b.n or a.face_counts() != b.face_counts():
        return False
    if a.n <= 0:
        return True
    ga, gb = build_flag_graph(a), build_flag_graph(b)
    if len(ga) != len(gb):
        return False
    for target in range(len(gb)):
        perm = extend_between(ga, gb, 0, target)
        if perm is None:
            continue
        if _face_map_is_isomorphism(ga, gb, perm):
            return True
    return False


def _face_map_is_isomorphism(ga, gb, perm):
    a, b = ga.poset, gb.poset
    fmap = {a.bottom: b.bottom, a.top: b.top}
    for k, flag in enumerate(ga.flags):
        img = gb.flags[perm[k]]
        for r, f in enumerate(flag):
            g = img[r]
            if fmap.setdefault(f, g) != g:
                return False
    if len(set(fmap.values())) != len(fmap) or len(fmap) != len(a):
        return False
    return all({fmap[g] for g in a.covers(f)} == set(b.covers(fmap[f])) for f in a.face_ids())
