"""Flag-orbit classification, double Schläfli symbols and the transitivity theorems."""

from __future__ import annotations

import itertools
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from .errors import BadRank, NotAChain, NotTwoOrbit
from .flags import FlagGraph, build_flag_graph
from .groups import Group, automorphism_group, flag_orbit_labels, orbits
from .poset import RankedPoset, SectionHandle, section


@dataclass
class Analysis:
    """Flag graph, automorphism group and flag-orbit labels of one poset."""

    poset: RankedPoset
    graph: FlagGraph
    group: Group
    labels: np.ndarray

    @property
    def orbit_count(self):
        return int(self.labels.max()) + 1 if len(self.labels) else 1

    def same_orbit(self, a, b):
        return self.labels[a] == self.labels[b]


_CACHE: OrderedDict = OrderedDict()
_CACHE_SIZE = 64


def analyze(p: RankedPoset) -> Analysis:
    """Cached flag graph + group for ``p`` (keyed on object identity)."""
    hit = _CACHE.get(id(p))
    if hit is not None and hit.poset is p:
        _CACHE.move_to_end(id(p))
        return hit
    g = build_flag_graph(p)
    G = automorphism_group(g)
    a = Analysis(p, g, G, flag_orbit_labels(G))
    _CACHE[id(p)] = a
    if len(_CACHE) > _CACHE_SIZE:
        _CACHE.popitem(last=False)
    return a


@dataclass(frozen=True)
class DoubleSchlafli:
    top: tuple
    bottom: tuple

    @property
    def is_equivelar(self):
        return self.top == self.bottom

    def canonical(self) -> "DoubleSchlafli":
        """Row order that does not depend on the base flag."""
        if self.bottom < self.top:
            return DoubleSchlafli(self.bottom, self.top)
        return self

    def rows(self):
        return [list(self.top), list(self.bottom)]

    def __str__(self):
        return "{" + ",".join(map(str, self.top)) + " / " + ",".join(map(str, self.bottom)) + "}"


@dataclass
class ClassProfile:
    orbit_count: int
    class_type_set: frozenset | None
    reflection_deficiency: int | None
    chirality: bool
    symbol: DoubleSchlafli | None
    n: int
    flag_count: int = 0
    group_order: int = 0

    @property
    def is_regular(self):
        return self.orbit_count == 1

    @property
    def is_two_orbit(self):
        return self.orbit_count == 2

    @property
    def complement(self):
        if self.class_type_set is None:
            return None
        return frozenset(range(self.n)) - self.class_type_set

    def label(self):
        if self.orbit_count == 1:
            return "regular"
        if self.orbit_count == 2:
            return "2_{" + ",".join(map(str, sorted(self.class_type_set))) + "}"
        return f"{self.orbit_count}-orbit"

    def to_json(self):
        out = {
            "rank": self.n,
            "flags": self.flag_count,
            "group_order": self.group_order,
            "orbit_count": self.orbit_count,
            "class": self.label(),
            "class_type_set": None if self.class_type_set is None else sorted(self.class_type_set),
            "reflection_deficiency": self.reflection_deficiency,
            "chirality": self.chirality,
        }
        if self.symbol is not None:
            out["symbol_top"] = list(self.symbol.top)
            out["symbol_bottom"] = list(self.symbol.bottom)
            canon = self.symbol.canonical()
            out["symbol_canonical"] = canon.rows()
        else:
            out["symbol_top"] = out["symbol_bottom"] = out["symbol_canonical"] = None
        return out


def _section_sizes(a: Analysis, flag):
    """Number of i-faces in Φ_{i+1}/Φ_{i-2} for i = 1..n-1."""
    p, g = a.poset, a.graph
    out = []
    for i in range(1, p.n):
        lo, hi = g.face(flag, i - 2), g.face(flag, i + 1)
        out.append(sum(1 for f in p.covers(hi) if p.leq(lo, f)))
    return tuple(out)


def other_orbit_flag(a: Analysis, base=0):
    """Least flag outside the orbit of ``base``; ``base`` itself when regular."""
    lab = a.labels[base]
    diff = np.flatnonzero(a.labels != lab)
    return int(diff[0]) if len(diff) else base


def double_schlafli(p: RankedPoset) -> DoubleSchlafli:
    a = analyze(p)
    if a.orbit_count > 2:
        raise NotTwoOrbit(f"{a.orbit_count} flag orbits")
    return DoubleSchlafli(_section_sizes(a, 0), _section_sizes(a, other_orbit_flag(a)))


def class_type_set(a: Analysis, flag=0):
    return frozenset(i for i in range(a.graph.n) if a.same_orbit(flag, int(a.graph.adj[i, flag])))


def classify(p: RankedPoset) -> ClassProfile:
    """Orbit count, class type set, deficiency, chirality and symbol.

    Inputs with more than two flag orbits get a profile with the class
    fields left empty instead of an exception.
    """
    a = analyze(p)
    n = p.n
    k = a.orbit_count
    base = dict(n=n, flag_count=len(a.graph), group_order=len(a.group))
    if k > 2:
        return ClassProfile(k, None, None, False, None, **base)
    I = class_type_set(a)
    sym = double_schlafli(p)
    return ClassProfile(k, I, n - len(I), k == 2 and not I, sym, **base)


def require_two_orbit(p: RankedPoset) -> ClassProfile:
    prof = classify(p)
    if prof.orbit_count != 2:
        raise NotTwoOrbit(f"{prof.orbit_count} flag orbits")
    return prof


# theorem checks ---------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    instances: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def add(self, passed, witness=None):
        self.instances += 1
        if not passed:
            self.failures.append(witness)

    def to_json(self):
        return {"name": self.name, "instances": self.instances,
                "failures": [_jsonable(f) for f in self.failures[:20]],
                "failure_count": len(self.failures),
                "verdict": "PASS" if self.ok else "FAIL",
                "details": _jsonable(self.details)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def face_transitivity_report(p: RankedPoset) -> CheckReport:
    """Face-orbit count per rank against the full-transitivity theorem."""
    prof = require_two_orbit(p)
    a = analyze(p)
    comp = prof.complement
    rep = CheckReport("face_transitivity")
    table = {}
    for i in range(p.n):
        actual = len(orbits(a.group, ("faces", i)))
        expected = 2 if comp == {i} else 1
        table[i] = actual
        rep.add(actual == expected, {"rank": i, "orbits": actual, "expected": expected})
        if expected == 2:
            # the two orbits are represented by the i-faces of Φ and Φ^i
            parts = orbits(a.group, ("faces", i))
            f0 = a.graph.face(0, i)
            f1 = a.graph.face(int(a.graph.adj[i, 0]), i)
            same = any(f0 in part and f1 in part for part in parts)
            rep.add(not same, {"rank": i, "representatives": [f0, f1]})
    rep.details = {"orbits_per_rank": table, "fully_transitive": all(v == 1 for v in table.values())}
    return rep


def section_orbit_report(p: RankedPoset, i: int, j: int) -> CheckReport:
    prof = require_two_orbit(p)
    if not -1 <= i <= j <= p.n:
        raise BadRank(f"section ranks ({i},{j}) outside -1..{p.n}")
    a = analyze(p)
    parts = orbits(a.group, ("sections", i, j))
    comp = prof.complement
    expected = 2 if comp <= {i, j} else 1
    rep = CheckReport(f"section_orbits_{i}_{j}")
    rep.add(len(parts) == expected, {"i": i, "j": j, "orbits": len(parts), "expected": expected})
    if expected == 2:
        k = next(iter(comp))
        g = a.graph
        x = (g.face(0, i), g.face(0, j))
        y = (g.face(int(g.adj[k, 0]), i), g.face(int(g.adj[k, 0]), j))
        same = any(x in part and y in part for part in parts)
        rep.add(not same, {"i": i, "j": j, "representatives": [x, y]})
    rep.details = {"orbits": len(parts), "expected": expected}
    return rep


def all_section_orbit_reports(p: RankedPoset) -> CheckReport:
    rep = CheckReport("section_orbits")
    for i in range(-1, p.n + 1):
        for j in range(i, p.n + 1):
            sub = section_orbit_report(p, i, j)
            rep.instances += sub.instances
            rep.failures += sub.failures
    return rep


def section_class_check(p: RankedPoset) -> CheckReport:
    """Every section is regular or two-orbit with the shifted class type set.

    One representative per orbit of S_{r,s} is classified; sections in one
    orbit are isomorphic.
    """
    prof = require_two_orbit(p)
    a = analyze(p)
    I = prof.class_type_set
    rep = CheckReport("section_class")
    for r in range(-1, p.n + 1):
        for s in range(r + 1, p.n + 1):
            for part in orbits(a.group, ("sections", r, s)):
                lo, hi = part[0]
                q = section(SectionHandle(p, lo, hi))
                sub = classify(q)
                expect = frozenset(i - (r + 1) for i in I if r < i < s)
                passed = sub.orbit_count == 1 or (
                    sub.orbit_count == 2 and sub.class_type_set == expect)
                rep.add(passed, {"r": r, "s": s, "section": [lo, hi],
                                 "class": sub.label(), "expected": sorted(expect)})
    return rep


def chain_orbit_check(p: RankedPoset, chain) -> bool:
    """Whether every flag through ``chain`` lies in one flag orbit."""
    require_two_orbit(p)
    chain = set(chain) - {p.bottom, p.top}
    if not p.is_chain(chain):
        raise NotAChain(f"{sorted(chain)} is not a chain")
    a = analyze(p)
    ks = a.graph.flags_containing(chain)
    return len({int(a.labels[k]) for k in ks}) == 1


def chain_lemma_check(p: RankedPoset) -> CheckReport:
    """Chains whose rank set contains the complement of I pin the orbit.

    All subchains of one flag from each orbit are tested; every chain is an
    automorphic image of one of those.
    """
    prof = require_two_orbit(p)
    a = analyze(p)
    comp = prof.complement
    rep = CheckReport("chain_orbit")
    reps = [0, other_orbit_flag(a)]
    flag_sets = [set(f) for f in a.graph.flags]
    for k in reps:
        flag = a.graph.flags[k]
        for size in range(0, p.n + 1):
            for ranks in itertools.combinations(range(p.n), size):
                if not comp <= set(ranks):
                    continue
                chain = {flag[r] for r in ranks}
                ks = [m for m, fs in enumerate(flag_sets) if chain <= fs]
                one = len({int(a.labels[m]) for m in ks}) == 1
                rep.add(one, {"flag": k, "ranks": list(ranks)})
    return rep


def class_well_defined_check(p: RankedPoset) -> CheckReport:
    """For each i, "Φ and Φ^i in one orbit" is the same for all flags."""
    a = analyze(p)
    rep = CheckReport("class_well_defined")
    for i in range(p.n):
        same = a.labels[a.graph.adj[i]] == a.labels
        rep.add(bool(same.all() or (~same).all()), {"rank": i})
    return rep


def parity_check(p: RankedPoset) -> CheckReport:
    prof = require_two_orbit(p)
    I = prof.class_type_set
    rep = CheckReport("parity")
    for l in range(1, p.n):
        if (l - 1 in I) != (l in I):
            for row in (prof.symbol.top, prof.symbol.bottom):
                rep.add(row[l - 1] % 2 == 0, {"l": l, "p_l": row[l - 1]})
    return rep


def is_equivelar(p: RankedPoset) -> bool:
    """Direct check: each 2-section type has one size over all flags."""
    a = analyze(p)
    sizes = {_section_sizes(a, k) for k in range(len(a.graph))}
    return len(sizes) == 1


def equivelar_check(p: RankedPoset) -> CheckReport:
    prof = classify(p)
    rep = CheckReport("equivelar")
    if prof.symbol is not None:
        direct = is_equivelar(p)
        rep.add(direct == prof.symbol.is_equivelar,
                {"direct": direct, "rows_equal": prof.symbol.is_equivelar})
    return rep


def theorem_suite(p: RankedPoset) -> list[CheckReport]:
    """All classification theorem checks; two-orbit-only ones are skipped otherwise."""
    out = [class_well_defined_check(p), equivelar_check(p)]
    if classify(p).orbit_count == 2:
        out += [face_transitivity_report(p), all_section_orbit_reports(p),
                section_class_check(p), chain_lemma_check(p), parity_check(p)]
    return out
