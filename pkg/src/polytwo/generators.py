"""Distinguished generators of a two-orbit automorphism group.

For base flag Φ and class type set I the system holds

* ``rho[i]`` (i in I) with Φρ_i = Φ^i,
* ``alpha2[(j, k)]`` (j, k not in I) with Φα_{j,k} = Φ^{j,k},
* ``alpha3[(j, i, j)]`` (i in I, j not in I) with Φα_{j,i,j} = Φ^{j,i,j}.

Products follow the right action, so applying ``γ_1 ... γ_m`` to Φ walks
the adjacency word ``s(γ_m) ... s(γ_1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classify import Analysis, _section_sizes, _jsonable, analyze, class_type_set
from .errors import FormulaMismatch, MissingAutomorphism, NotTwoOrbit
from .flags import apply_word, connecting_word
from .groups import Automorphism, Group, extend_flag_map, generate_subgroup
from .poset import RankedPoset


def rho_label(i):
    return f"rho_{i}"


def alpha2_label(j, k):
    return f"alpha_{j}_{k}"


def alpha3_label(j, i):
    return f"alpha_{j}_{i}_{j}"


@dataclass
class GeneratorSystem:
    base_flag: int
    I: frozenset
    rho: dict
    alpha2: dict
    alpha3: dict
    analysis: Analysis = field(repr=False)

    @property
    def n(self):
        return self.analysis.graph.n

    @property
    def complement(self):
        return frozenset(range(self.n)) - self.I

    @property
    def graph(self):
        return self.analysis.graph

    @property
    def group(self):
        return self.analysis.group

    def word_of(self, label):
        """Adjacency word ``s(γ)`` of a generator label."""
        parts = tuple(int(x) for x in label.split("_")[1:])
        return parts

    def labelled(self):
        """All generators as ``(label, automorphism)`` in a fixed order."""
        out = [(rho_label(i), g) for i, g in sorted(self.rho.items())]
        out += [(alpha2_label(*jk), g) for jk, g in sorted(self.alpha2.items())]
        out += [(alpha3_label(j, i), g) for (j, i, _), g in sorted(self.alpha3.items())]
        return out

    def generators(self):
        return [g for _, g in self.labelled()]

    def by_label(self, label):
        parts = tuple(int(x) for x in label.split("_")[1:])
        if len(parts) == 1:
            return self.rho[parts[0]]
        if len(parts) == 2:
            return self.alpha2[parts]
        return self.alpha3[parts]

    def gamma_generators(self, J):
        """Labelled generators of Γ_J."""
        J = set(J)
        I = self.I - J
        Ibar = self.complement - J
        out = [(rho_label(i), self.rho[i]) for i in sorted(I)]
        out += [(alpha2_label(j, k), self.alpha2[(j, k)])
                for j in sorted(Ibar) for k in sorted(Ibar) if j != k]
        out += [(alpha3_label(j, i), self.alpha3[(j, i, j)])
                for j in sorted(Ibar) for i in sorted(I)]
        return out

    def labels_json(self):
        return [lab for lab, _ in self.labelled()]


def _element_at(a: Analysis, base, target, what):
    x = extend_flag_map(a.graph, base, target)
    if x is None or x not in a.group:
        raise MissingAutomorphism(f"no automorphism realizes {what} at flag {base}")
    return x


def distinguished_generators(p: RankedPoset, group: Group | None = None, base_flag=0):
    """Extract G_I at ``base_flag`` by flag-map extension to the image flags."""
    a = analyze(p)
    if group is not None and group.keys != a.group.keys:
        raise ValueError("group does not match the polytope")
    if a.orbit_count > 2:
        raise NotTwoOrbit(f"{a.orbit_count} flag orbits")
    return _extract(a, base_flag)


def _extract(a: Analysis, base):
    g = a.graph
    n = g.n
    I = class_type_set(a, base)
    Ibar = [j for j in range(n) if j not in I]
    rho = {i: _element_at(a, base, apply_word(g, base, (i,)), rho_label(i)) for i in sorted(I)}
    alpha2 = {}
    for j in Ibar:
        for k in Ibar:
            alpha2[(j, k)] = _element_at(a, base, apply_word(g, base, (j, k)), alpha2_label(j, k))
    alpha3 = {}
    for j in Ibar:
        for i in sorted(I):
            alpha3[(j, i, j)] = _element_at(a, base, apply_word(g, base, (j, i, j)),
                                            alpha3_label(j, i))
    return GeneratorSystem(base, I, rho, alpha2, alpha3, a)


def check_defining_actions(gs: GeneratorSystem) -> list:
    """Labels whose generator does not send the base flag along its word."""
    bad = []
    for label, x in gs.labelled():
        if x.act(gs.base_flag) != apply_word(gs.graph, gs.base_flag, gs.word_of(label)):
            bad.append(label)
    return bad


def verify_generation(gs: GeneratorSystem, group: Group | None = None) -> bool:
    group = gs.group if group is None else group
    return generate_subgroup(group, gs.generators()) == group


def _prod(gs, xs):
    out = Automorphism.identity(gs.graph)
    for x in xs:
        out = out * x
    return out


@dataclass
class FactorizationTrace:
    word: tuple
    split_points: tuple
    factors: list
    product: Automorphism

    def factor_labels(self):
        return [(name, labels) for name, labels, _ in self.factors]

    def to_json(self):
        return {"word": list(self.word), "split_points": list(self.split_points),
                "factors": [{"name": nm, "generators": labs} for nm, labs, _ in self.factors]}


def factorize(gs: GeneratorSystem, psi: Automorphism) -> FactorizationTrace:
    """Write ``psi`` as γ_{2s} β_{2s-1} γ_{2s-2} ... γ_2 β_1 γ_0.

    The γ are products of ρ's and each β is α_{j,k} followed by α_{j,i,j}'s,
    read off a shortest adjacency word from Φ to Φψ split at the letters
    outside I.  Trivial factors are omitted.
    """
    base = gs.base_flag
    word = connecting_word(gs.graph, base, psi.act(base))
    I = gs.I
    ks = tuple(pos + 1 for pos, i in enumerate(word) if i not in I)
    if len(ks) % 2:
        raise AssertionError("odd number of letters outside I")
    # letters are 1-indexed: word[m-1] is i_m
    letter = lambda m: word[m - 1]
    bounds = (0,) + ks + (len(word) + 1,)
    factors = []

    def gamma(q, lo, hi):
        labels = [rho_label(letter(m)) for m in range(hi - 1, lo, -1)]
        if labels:
            factors.append((f"gamma_{q}", labels, _prod(gs, [gs.by_label(x) for x in labels])))

    def beta(q, lo, hi):
        j, k = letter(lo), letter(hi)
        labels = [alpha2_label(j, k)] + [alpha3_label(j, letter(m)) for m in range(hi - 1, lo, -1)]
        factors.append((f"beta_{q}", labels, _prod(gs, [gs.by_label(x) for x in labels])))

    # pieces from the start of the word; reversed at the end
    pieces = []
    s = len(ks) // 2
    gamma(0, bounds[0], bounds[1])
    pieces.extend(factors)
    for m in range(s):
        factors.clear()
        beta(2 * m + 1, ks[2 * m], ks[2 * m + 1])
        nxt = ks[2 * m + 2] if 2 * m + 2 < len(ks) else len(word) + 1
        gamma(2 * m + 2, ks[2 * m + 1], nxt)
        pieces.extend(factors)
    ordered = list(reversed(pieces))
    product = _prod(gs, [x for _, _, x in ordered])
    return FactorizationTrace(tuple(word), ks, ordered, product)


def base_symbol(gs: GeneratorSystem):
    """Rows of 2-section sizes at Φ and at Φ^j (j outside I), in that order."""
    a = gs.analysis
    top = _section_sizes(a, gs.base_flag)
    if gs.complement:
        j = min(gs.complement)
        bottom = _section_sizes(a, int(gs.graph.adj[j, gs.base_flag]))
    else:
        bottom = top
    return top, bottom


@dataclass
class RelationReport:
    entries: list = field(default_factory=list)

    def add(self, family, relation, ranks, passed, expected=None, actual=None, row=None):
        self.entries.append({"family": family, "relation": relation, "ranks": list(ranks),
                             "expected": expected, "actual": actual, "row": row,
                             "verdict": "PASS" if passed else "FAIL"})

    @property
    def ok(self):
        return all(e["verdict"] == "PASS" for e in self.entries)

    def failures(self):
        return [e for e in self.entries if e["verdict"] == "FAIL"]

    def families(self):
        out = {}
        for e in self.entries:
            out.setdefault(e["family"], [0, 0])
            out[e["family"]][0] += 1
            out[e["family"]][1] += e["verdict"] == "FAIL"
        return out

    def to_json(self):
        return {"verdict": "PASS" if self.ok else "FAIL", "instances": len(self.entries),
                "families": {k: {"instances": v[0], "failures": v[1]}
                             for k, v in sorted(self.families().items())},
                "entries": _jsonable(self.entries)}


def _pair_period(row, i, l):
    """p_{il}: 2 when far apart, else the entry at the larger index."""
    if abs(i - l) >= 2:
        return 2
    return row[max(i, l) - 1]


def verify_relations(gs: GeneratorSystem, symbol=None) -> RelationReport:
    """Check relation families (a)-(f) and, for regular inputs, the string relations.

    ``symbol`` is ``(top, bottom)`` bound to the base flag (top) and to the
    flags of the other orbit (bottom); it defaults to :func:`base_symbol`.
    """
    if symbol is None:
        top, bottom = base_symbol(gs)
    else:
        top, bottom = tuple(symbol.top), tuple(symbol.bottom)
    rep = RelationReport()
    I = sorted(gs.I)
    Ibar = sorted(gs.complement)
    n = gs.n
    one = lambda x: x.is_identity()
    rho, a2, a3 = gs.rho, gs.alpha2, gs.alpha3

    # (a)
    for i in I:
        rep.add("a", "rho_i^2 = 1", [i], one(rho[i] * rho[i]))
    for j in Ibar:
        for i in I:
            rep.add("a", "alpha_jij^2 = 1", [j, i], one(a3[(j, i, j)] ** 2))
            if abs(j - i) >= 2:
                rep.add("a", "alpha_jij = rho_i", [j, i], a3[(j, i, j)] == rho[i])
    for j in Ibar:
        for k in Ibar:
            x = a2[(j, k)]
            rep.add("a", "alpha_jk alpha_kj = 1", [j, k], one(x * a2[(k, j)]))
            if j == k:
                rep.add("a", "alpha_jj = 1", [j], one(x))
                continue
            want = _pair_period(top, j, k)
            got = x.order()
            rep.add("a", "order(alpha_jk) = p_jk", [j, k], got == want, want, got, "top")

    # (b)
    for i in I:
        for l in I:
            if i < l:
                want = _pair_period(top, i, l)
                got = (rho[i] * rho[l]).order()
                fam = "coxeter" if not Ibar else "b"
                rep.add(fam, "order(rho_i rho_l) = p_il", [i, l], got == want, want, got, "top")
    for j in Ibar:
        for i in I:
            for l in I:
                if i < l:
                    want = _pair_period(bottom, i, l)
                    got = (a3[(j, i, j)] * a3[(j, l, j)]).order()
                    rep.add("b", "order(alpha_jij alpha_jlj) = q_il", [j, i, l], got == want,
                            want, got, "bottom")

    # (c)
    for j in Ibar:
        for k in Ibar:
            for i in I:
                lhs = a2[(j, k)] * a3[(j, i, j)] * a2[(k, j)]
                rep.add("c", "alpha_jk alpha_jij alpha_kj = alpha_kik", [j, k, i],
                        lhs == a3[(k, i, k)])

    # (d)
    for i in I:
        if i + 1 in gs.complement:
            for j in Ibar:
                if abs(j - i) >= 2:
                    lhs = a2[(j, i + 1)] * rho[i] * a2[(i + 1, j)]
                    rep.add("d", "alpha_j(i+1) rho_i alpha_(i+1)j = alpha_(i+1)i(i+1)",
                            [j, i], lhs == a3[(i + 1, i, i + 1)])
        for j in range(1, n):
            if j - 1 in gs.complement and j in gs.complement and (i < j - 2 or i > j + 1):
                rep.add("d", "alpha_(j-1)j rho_i = rho_i alpha_(j-1)j", [j, i],
                        a2[(j - 1, j)] * rho[i] == rho[i] * a2[(j - 1, j)])

    # (e)
    for j0 in Ibar:
        for i in I:
            for l in I:
                if i < l and l - i >= 2:
                    x, y = a3[(j0, i, j0)], a3[(j0, l, j0)]
                    rep.add("e", "alpha_j0ij0 and alpha_j0lj0 commute", [j0, i, l], x * y == y * x)

    # (f)
    for l in range(1, n):
        if (l - 1 in gs.I) == (l in gs.I):
            continue
        if l - 1 in gs.I:
            pair = [rho[l - 1], a3[(l, l - 1, l)]]
            name = "|<rho_(l-1), alpha_l(l-1)l>| = p_l"
        else:
            pair = [rho[l], a3[(l - 1, l, l - 1)]]
            name = "|<rho_l, alpha_(l-1)l(l-1)>| = p_l"
        got = len(generate_subgroup(gs.group, pair))
        want = top[l - 1]
        rep.add("f", name, [l], got == want and want % 2 == 0, want, got, "top")
    return rep


def rebase_by_formula(gs: GeneratorSystem, j0: int) -> dict:
    """Generators at Φ^{j0} written in terms of the system at Φ."""
    if j0 in gs.I:
        raise ValueError(f"rank {j0} lies in I")
    rho, a2, a3 = gs.rho, gs.alpha2, gs.alpha3
    out = {}
    for i in gs.I:
        out[rho_label(i)] = a3[(j0, i, j0)]
    for j in gs.complement:
        for k in gs.complement:
            out[alpha2_label(j, k)] = a2[(k, j0)] * a2[(j0, j)]
        for i in gs.I:
            out[alpha3_label(j, i)] = a2[(j, j0)] * rho[i] * a2[(j0, j)]
    return out


def rebase(gs: GeneratorSystem, j0: int) -> GeneratorSystem:
    """The system at Φ^{j0}; formula and direct extraction must agree."""
    formula = rebase_by_formula(gs, j0)
    direct = _extract(gs.analysis, int(gs.graph.adj[j0, gs.base_flag]))
    for label, x in direct.labelled():
        if formula.get(label) != x:
            raise FormulaMismatch(f"{label} differs after rebasing at {j0}")
    if set(formula) != set(direct.labels_json()):
        raise FormulaMismatch("generator label sets differ after rebasing")
    return direct


def append_rule_check(gs: GeneratorSystem, samples=50, seed=0) -> list:
    """Φ(γα) = (Φα)^{s(γ)} for each generator γ and random α; returns failures."""
    rng = np.random.default_rng(seed)
    g = gs.graph
    base = gs.base_flag
    bad = []
    for _ in range(samples):
        alpha = gs.group.random_element(rng)
        for label, gamma in gs.labelled():
            lhs = (gamma * alpha).act(base)
            rhs = apply_word(g, alpha.act(base), gs.word_of(label))
            if lhs != rhs:
                bad.append((label, alpha.key))
    return bad


def factorization_check(gs: GeneratorSystem, samples=100, seed=0) -> list:
    """Random elements whose factorization does not multiply back; returns failures."""
    rng = np.random.default_rng(seed)
    G = gs.group
    elems = list(G) if len(G) <= samples else [G.random_element(rng) for _ in range(samples)]
    bad = []
    for psi in elems:
        tr = factorize(gs, psi)
        if tr.product != psi or len(tr.split_points) % 2:
            bad.append(psi.key)
    return bad
