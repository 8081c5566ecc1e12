"""Distinguished subgroups Γ_J, their stabilizer and intersection properties."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .classify import CheckReport, classify
from .errors import BadParameter, BadRank
from .generators import GeneratorSystem, alpha2_label, rebase
from .groups import Coset, Group, generate_subgroup
from .poset import SectionHandle, section

MAX_FAMILY_RANK = 8


def subsets(n):
    for size in range(n + 1):
        for c in itertools.combinations(range(n), size):
            yield frozenset(c)


@dataclass
class SubgroupFamily:
    kind: str
    gs: GeneratorSystem
    subgroups: dict
    j0: int | None = None

    @property
    def n(self):
        return self.gs.n

    @property
    def base_flag(self):
        return self.gs.base_flag

    def lower(self, J):
        """Γ_J."""
        return self.subgroups[frozenset(J)]

    def upper(self, J):
        """Γ^J = Γ_{N∖J}."""
        return self.subgroups[frozenset(range(self.n)) - frozenset(J)]

    def generator_labels(self, J):
        return [lab for lab, _ in self.gs.gamma_generators(J)]


def build_family(gs: GeneratorSystem, kind="unprimed", j0=None) -> SubgroupFamily:
    """Γ_J for every J ⊆ N, generated from the labelled generators."""
    if gs.n > MAX_FAMILY_RANK:
        raise BadParameter(f"rank {gs.n} exceeds family cap {MAX_FAMILY_RANK}")
    subs = {}
    for J in subsets(gs.n):
        subs[J] = generate_subgroup(gs.group, [x for _, x in gs.gamma_generators(J)])
    return SubgroupFamily(kind, gs, subs, j0)


def build_primed_family(gs: GeneratorSystem, j0: int) -> SubgroupFamily:
    return build_family(rebase(gs, j0), kind=f"primed({j0})", j0=j0)


def _face_table(graph):
    """``tab[r][k]`` = integer code of the r-face of flag k."""
    p = graph.poset
    codes = {f: c for c, f in enumerate(p.face_ids())}
    return np.array([[codes[f[r]] for f in graph.flags] for r in range(graph.n)],
                     dtype=np.int64).reshape(graph.n, len(graph))


def stabilizer_keys(group: Group, flag: int, J) -> frozenset:
    """Keys of the elements fixing every face Φ_j (j in J) of ``flag``."""
    graph = group.graph
    tab = _face_table(graph)
    elems = list(group)
    if not elems:
        return frozenset()
    images = np.array([e.perm[flag] for e in elems])
    mask = np.ones(len(elems), dtype=bool)
    for j in J:
        mask &= tab[j][images] == tab[j][flag]
    return frozenset(e.key for e, m in zip(elems, mask) if m)


def verify_stabilizers(family: SubgroupFamily, graph=None) -> CheckReport:
    rep = CheckReport(f"stabilizers[{family.kind}]")
    G = family.gs.group
    for J in subsets(family.n):
        want = stabilizer_keys(G, family.base_flag, J)
        got = family.lower(J).keys
        rep.add(got == want, {"J": sorted(J), "order": len(got), "stabilizer": len(want)})
    return rep


def verify_intersection_property(family: SubgroupFamily) -> CheckReport:
    rep = CheckReport(f"intersection[{family.kind}]")
    subs = list(subsets(family.n))
    for J in subs:
        for K in subs:
            lhs = family.lower(J).keys & family.lower(K).keys
            rep.add(lhs == family.lower(J | K).keys, {"J": sorted(J), "K": sorted(K), "form": "lower"})
            up = family.upper(J).keys & family.upper(K).keys
            rep.add(up == family.upper(J & K).keys, {"J": sorted(J), "K": sorted(K), "form": "upper"})
    return rep


def verify_intertwine(family: SubgroupFamily, primed: SubgroupFamily, j0: int) -> CheckReport:
    rep = CheckReport(f"intertwine[{j0}]")
    for J in subsets(family.n):
        if j0 not in J:
            want = family.lower(J).keys
        else:
            want = family.lower(J - {j0}).keys & primed.lower({j0}).keys
        rep.add(primed.lower(J).keys == want, {"J": sorted(J)})
    return rep


def verify_section_transitivity(family: SubgroupFamily, graph=None) -> CheckReport:
    """Γ_J with J = N∖{r+1..s-1} is flag-transitive on Φ_s/Φ_r iff that range lies in I."""
    gs = family.gs
    g = gs.graph
    p = g.poset
    n = family.n
    base = family.base_flag
    rep = CheckReport(f"section_transitivity[{family.kind}]")
    for r in range(-1, n):
        for s in range(r + 1, n + 1):
            mid = frozenset(range(r + 1, s))
            J = frozenset(range(n)) - mid
            if not mid:
                rep.add(True, {"r": r, "s": s, "trivial": True})
                continue
            proj = lambda k: tuple(g.flags[k][r + 1:s])
            fixed = {j: g.flags[base][j] for j in J}
            section_flags = {proj(k) for k in range(len(g))
                             if all(g.flags[k][j] == f for j, f in fixed.items())}
            reached = {proj(x.act(base)) for x in family.lower(J)}
            transitive = reached == section_flags
            expected = mid <= gs.I
            ok = transitive == expected
            if transitive:
                q = section(SectionHandle(p, g.face(base, r), g.face(base, s)))
                prof = classify(q)
                ok = ok and prof.orbit_count == 1 and prof.group_order == len(section_flags)
            rep.add(ok, {"r": r, "s": s, "transitive": transitive, "expected": expected,
                         "section_flags": len(section_flags)})
    return rep


@dataclass
class GammaLDecomposition:
    l: int
    minus: Group
    plus: Group
    pm_generators: list
    index: int
    checks: CheckReport = field(repr=False)

    def to_json(self):
        return {"l": self.l, "minus_order": len(self.minus), "plus_order": len(self.plus),
                "pm_generators": self.pm_generators, "index": self.index,
                "checks": self.checks.to_json()}


def _commute_all(a: Group, b: Group, limit=40000):
    xs = list(a) if len(a) * len(b) <= limit else a.generators
    ys = list(b) if len(a) * len(b) <= limit else b.generators
    return all(x * y == y * x for x in xs for y in ys)


def gamma_l_decomposition(gs: GeneratorSystem, l: int, family: SubgroupFamily | None = None):
    """Γ_l^-, Γ_l^+ and the straddling α_{j,k}, with the structure checks."""
    n = gs.n
    if not 0 <= l < n:
        raise BadRank(f"rank {l} outside 0..{n - 1}")
    family = family or build_family(gs)
    minus = family.lower(range(l, n))
    plus = family.lower(range(0, l + 1))
    comp = sorted(gs.complement)
    pm = [(j, k) for j in comp for k in comp if j < l < k]
    gl = family.lower({l})
    rep = CheckReport(f"gamma_l[{l}]")
    rep.add(_commute_all(minus, plus), {"check": "commute"})
    rep.add(len(minus.keys & plus.keys) == 1, {"check": "trivial intersection"})
    prod = minus.product_set(plus)
    rep.add(len(prod) == len(minus) * len(plus), {"check": "direct product order"})
    closure = generate_subgroup(gs.group, minus.generators + plus.generators)
    rep.add(closure.keys == prod, {"check": "product is a subgroup"})
    index = len(gl) // len(prod) if len(prod) else 0
    rep.add(len(gl) % len(prod) == 0 and index == (2 if pm else 1),
            {"check": "index", "index": index, "pm": len(pm)})
    rep.add(prod <= gl.keys, {"check": "product inside Gamma_l"})
    if pm:
        for j, k in pm:
            a = gs.alpha2[(j, k)]
            shifted = frozenset(int(a.perm[x]) for x in prod)
            rep.add(prod | shifted == gl.keys and not (prod & shifted),
                    {"check": "coset identity", "alpha": alpha2_label(j, k)})
    _alphcom(gs, l, rep)
    _conjugation(gs, l, rep)
    dec = GammaLDecomposition(l, minus, plus, [alpha2_label(j, k) for j, k in pm], index, rep)
    return dec


def _alphcom(gs, l, rep):
    a2 = gs.alpha2
    comp = sorted(gs.complement)
    lo = [j for j in comp if j < l]
    hi = [k for k in comp if k > l]
    for j, jj in itertools.product(lo, repeat=2):
        for k, kk in itertools.product(hi, repeat=2):
            lhs = a2[(j, k)] * a2[(jj, kk)]
            r1 = a2[(kk, k)] * a2[(jj, j)]
            r2 = a2[(jj, j)] * a2[(kk, k)]
            rep.add(lhs == r1 == r2, {"check": "alphcom", "ranks": [j, k, jj, kk]})


def _conjugation(gs, l, rep):
    rho, a2, a3 = gs.rho, gs.alpha2, gs.alpha3
    comp = sorted(gs.complement)
    I = sorted(gs.I)
    for j in [x for x in comp if x < l]:
        for k in [x for x in comp if x > l]:
            a, ai = a2[(j, k)], a2[(k, j)]
            b, bi = a2[(k, j)], a2[(j, k)]
            # indices below l conjugated by α_{j,k}
            for i in [x for x in I if x < l]:
                rep.add(ai * rho[i] * a == a3[(j, i, j)], {"check": "asrs rho", "ranks": [j, k, i]})
            for s in [x for x in comp if x < l]:
                for t in [x for x in comp if x < l]:
                    rep.add(ai * a2[(s, t)] * a == a2[(t, j)] * a2[(j, s)],
                            {"check": "asrs alpha2", "ranks": [j, k, s, t]})
                for i in [x for x in I if x < l]:
                    rep.add(ai * a3[(s, i, s)] * a == a2[(s, j)] * rho[i] * a2[(j, s)],
                            {"check": "asrs alpha3", "ranks": [j, k, s, i]})
            # indices above l conjugated by α_{k,j}
            for i in [x for x in I if x > l]:
                rep.add(bi * rho[i] * b == a3[(k, i, k)], {"check": "asrsinv rho", "ranks": [j, k, i]})
            for s in [x for x in comp if x > l]:
                for t in [x for x in comp if x > l]:
                    rep.add(bi * a2[(s, t)] * b == a2[(t, k)] * a2[(k, s)],
                            {"check": "asrsinv alpha2", "ranks": [j, k, s, t]})
                for i in [x for x in I if x > l]:
                    rep.add(bi * a3[(s, i, s)] * b == a2[(s, k)] * rho[i] * a2[(k, s)],
                            {"check": "asrsinv alpha3", "ranks": [j, k, s, i]})


@dataclass
class DeficiencyReport:
    status: str
    checks: CheckReport
    generators_used: dict

    @property
    def ok(self):
        return self.checks.ok

    def to_json(self):
        return {"status": self.status, "checks": self.checks.to_json(),
                "generators_used": self.generators_used}


def verify_deficiency_lemmas(gs: GeneratorSystem, family=None, primed=None) -> DeficiencyReport:
    """Extra intersection identities for deficiency 1 and for complement {j0, j0+2}."""
    n = gs.n
    comp = sorted(gs.complement)
    rep = CheckReport("deficiency")
    used = {}
    family = family or build_family(gs)
    G = gs.group
    if len(comp) == 1 and n >= 2:
        j0 = comp[0]
        primed = primed or build_primed_family(gs, j0)
        if j0 != 0:
            J = frozenset(range(n)) - {j0 - 1, j0}
            lower = primed.lower(range(j0, n))
            lhs = family.lower(J).keys & lower.keys
            rhs = generate_subgroup(G, [gs.alpha3[(j0, j0 - 1, j0)]])
            rep.add(lhs == rhs.keys, {"identity": "minus", "j0": j0, "order": len(lhs)})
            used["minus"] = {"gamma": family.generator_labels(J),
                             "primed_minus": primed.generator_labels(range(j0, n)),
                             "target": f"alpha_{j0}_{j0 - 1}_{j0}"}
        if j0 != n - 1:
            J = frozenset(range(n)) - {j0, j0 + 1}
            upper = primed.lower(range(0, j0 + 1))
            lhs = family.lower(J).keys & upper.keys
            rhs = generate_subgroup(G, [gs.alpha3[(j0, j0 + 1, j0)]])
            rep.add(lhs == rhs.keys, {"identity": "plus", "j0": j0, "order": len(lhs)})
            used["plus"] = {"gamma": family.generator_labels(J),
                            "primed_plus": primed.generator_labels(range(0, j0 + 1)),
                            "target": f"alpha_{j0}_{j0 + 1}_{j0}"}
        status = "APPLICABLE(rd=1)"
    elif len(comp) == 2 and comp[1] - comp[0] == 2:
        j0, k0 = comp
        minus = family.lower(range(k0, n))
        plus = family.lower(range(0, j0 + 1))
        a = gs.alpha2[(j0, k0)]
        coset = Coset(plus, a, "right")
        rep.add(not (minus.keys & coset.keys), {"identity": "empty", "j0": j0})
        conj = plus.conjugated_by(a)
        lhs = minus.keys & conj.keys
        rhs = generate_subgroup(G, [gs.alpha3[(j0, j0 + 1, j0)]])
        rep.add(lhs == rhs.keys, {"identity": "conjugate", "j0": j0, "order": len(lhs)})
        used["rd2"] = {"minus": family.generator_labels(range(k0, n)),
                       "plus": family.generator_labels(range(0, j0 + 1)),
                       "alpha": alpha2_label(j0, k0), "target": f"alpha_{j0}_{j0 + 1}_{j0}"}
        status = "APPLICABLE(rd=2)"
    else:
        status = "NOT-APPLICABLE"
    return DeficiencyReport(status, rep, used)


def stabilizer_suite(gs: GeneratorSystem) -> list[CheckReport]:
    """Stabilizer, intersection, intertwine, section and Γ_l checks."""
    fam = build_family(gs)
    out = [verify_stabilizers(fam), verify_intersection_property(fam),
           verify_section_transitivity(fam)]
    for j0 in sorted(gs.complement):
        pf = build_primed_family(gs, j0)
        out += [verify_stabilizers(pf), verify_intersection_property(pf),
                verify_intertwine(fam, pf, j0)]
    for l in range(gs.n):
        out.append(gamma_l_decomposition(gs, l, fam).checks)
    return out
