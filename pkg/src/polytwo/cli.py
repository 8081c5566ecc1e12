"""Command line entry point: ``polytwo <command> ...``.

Exit codes: 0 success, 1 some check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import catalog
from .apf import read_apf, serialize_apf
from .classify import classify, face_transitivity_report, theorem_suite
from .errors import GroupTooLarge, NotTwoOrbit, PolytopeError
from .flags import build_flag_graph, export_flags
from .generators import (append_rule_check, check_defining_actions, distinguished_generators,
                         factorization_check, rebase, verify_generation, verify_relations)
from .order import coset_count_check, order_data, rebuild_order, verify_oracle_against_poset
from .poset import is_isomorphic, validate_polytope
from .stabilizers import (build_family, build_primed_family, gamma_l_decomposition,
                          verify_deficiency_lemmas, verify_intersection_property,
                          verify_intertwine, verify_section_transitivity, verify_stabilizers)

SUITES = ("relations", "stabilizers", "intersections", "sections", "deficiency", "order", "all")


class InputError(Exception):
    pass


def resolve_source(src: str):
    if src.startswith("catalog:"):
        try:
            return catalog.get(src[len("catalog:"):])
        except PolytopeError as exc:
            raise InputError(str(exc)) from exc
    if src.startswith("torus:"):
        m = re.fullmatch(r"torus:(-?\d+),(-?\d+)", src)
        if not m:
            raise InputError(f"bad torus spec {src!r}; expected torus:b,c")
        try:
            return catalog.torus_44(int(m.group(1)), int(m.group(2)))
        except PolytopeError as exc:
            raise InputError(str(exc)) from exc
    try:
        p = read_apf(src)
    except OSError as exc:
        raise InputError(f"cannot read {src}: {exc.strerror}") from exc
    except PolytopeError as exc:
        raise InputError(str(exc)) from exc
    rep = validate_polytope(p)
    if not rep.ok:
        raise InputError(f"{src} is not a polytope: " + ", ".join(
            k for k, v in rep.axioms().items() if not v))
    return p


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def _verdict(ok):
    return "PASS" if ok else "FAIL"


def cmd_analyze(p):
    prof = classify(p)
    out = prof.to_json()
    out["face_counts"] = p.face_counts()
    if prof.orbit_count > 2:
        out["note"] = "not a two-orbit polytope"
        return out, True
    if prof.orbit_count == 2:
        ft = face_transitivity_report(p)
        out["transitivity"] = ft.details["orbits_per_rank"]
        out["fully_transitive"] = ft.details["fully_transitive"]
    checks = theorem_suite(p)
    out["theorem_checks"] = {c.name: _verdict(c.ok) for c in checks}
    return out, all(c.ok for c in checks)


def _suite_relations(gs):
    rel = verify_relations(gs)
    res = {
        "defining_actions": _verdict(not check_defining_actions(gs)),
        "generation": _verdict(verify_generation(gs)),
        "factorization": _verdict(not factorization_check(gs)),
        "append_rule": _verdict(not append_rule_check(gs)),
        "relations": rel.to_json(),
        "generators": gs.labels_json(),
    }
    rb = {}
    for j0 in sorted(gs.complement):
        try:
            rebase(gs, j0)
            rb[str(j0)] = "PASS"
        except PolytopeError as exc:
            rb[str(j0)] = f"FAIL: {exc}"
    res["rebase"] = rb
    ok = rel.ok and all(res[k] == "PASS" for k in
                        ("defining_actions", "generation", "factorization", "append_rule"))
    return res, ok and all(v == "PASS" for v in rb.values())


def _suite_stabilizers(gs, fam):
    reps = [verify_stabilizers(fam), verify_section_transitivity(fam)]
    for j0 in sorted(gs.complement):
        pf = build_primed_family(gs, j0)
        reps += [verify_stabilizers(pf), verify_intertwine(fam, pf, j0)]
    decs = [gamma_l_decomposition(gs, l, fam) for l in range(gs.n)]
    out = {r.name: r.to_json() for r in reps}
    out["gamma_l"] = [d.to_json() for d in decs]
    return out, all(r.ok for r in reps) and all(d.checks.ok for d in decs)


def _suite_intersections(gs, fam):
    reps = [verify_intersection_property(fam)]
    for j0 in sorted(gs.complement):
        reps.append(verify_intersection_property(build_primed_family(gs, j0)))
    return {r.name: r.to_json() for r in reps}, all(r.ok for r in reps)


def _suite_order(p):
    data = order_data(p)
    q = rebuild_order(p, data)
    rt = is_isomorphic(p, q)
    orc = verify_oracle_against_poset(p, data)
    cc = coset_count_check(p, data)
    return ({"roundtrip": "ok" if rt else "FAIL", "oracle": orc.to_json(),
             "coset_counts": cc.to_json()}, rt and orc.ok and cc.ok)


def cmd_verify(p, suite):
    prof = classify(p)
    if prof.orbit_count > 2:
        raise InputError("not a two-orbit polytope")
    gs = distinguished_generators(p)
    fam = build_family(gs) if suite in ("stabilizers", "intersections", "deficiency", "all") else None
    out, ok = {"class": prof.label(), "suites": {}}, True
    wanted = SUITES[:-1] if suite == "all" else (suite,)
    for name in wanted:
        if name == "relations":
            res, good = _suite_relations(gs)
        elif name == "stabilizers":
            res, good = _suite_stabilizers(gs, fam)
        elif name == "intersections":
            res, good = _suite_intersections(gs, fam)
        elif name == "sections":
            checks = theorem_suite(p)
            res = {c.name: c.to_json() for c in checks}
            good = all(c.ok for c in checks)
        elif name == "deficiency":
            d = verify_deficiency_lemmas(gs, fam)
            res, good = d.to_json(), d.ok
        else:
            res, good = _suite_order(p)
        res["verdict"] = _verdict(good) if not isinstance(res.get("verdict"), str) else res["verdict"]
        out["suites"][name] = res
        ok = ok and good
    out["verdict"] = _verdict(ok)
    return out, ok


def cmd_catalog_list(with_search=False):
    rows = []
    entries = catalog.all_entries(include_search=with_search)
    for e in entries:
        p = e.build()
        rows.append({"name": e.name, "rank": p.n, "face_counts": p.face_counts(),
                     "class": classify(p).label()})
    out = {"entries": rows}
    if with_search:
        res = catalog.torus_search()
        out["search"] = {"examined": res.examined, "valid": res.valid,
                         "classes": res.class_counts, "rd2_specimens": len(res.specimens)}
    return out


def build_parser():
    ap = argparse.ArgumentParser(prog="polytwo", description="Two-orbit polytope toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="classify a polytope")
    a.add_argument("src")
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("src")
    r = sub.add_parser("rebuild", help="rebuild the order from group data")
    r.add_argument("src")
    c = sub.add_parser("catalog", help="catalog operations")
    c.add_argument("action", choices=["list"])
    c.add_argument("--with-search", action="store_true")
    e = sub.add_parser("export-flags", help="print the flag graph")
    e.add_argument("src")
    return ap


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "catalog":
            print(_dump(cmd_catalog_list(args.with_search)), file=stdout)
            return 0
        p = resolve_source(args.src)
        if args.command == "analyze":
            out, ok = cmd_analyze(p)
            print(_dump(out), file=stdout)
            return 0 if ok else 1
        if args.command == "verify":
            out, ok = cmd_verify(p, args.suite)
            print(_dump(out), file=stdout)
            return 0 if ok else 1
        if args.command == "rebuild":
            if classify(p).orbit_count > 2:
                raise InputError("not a two-orbit polytope")
            try:
                q = rebuild_order(p)
                ok = is_isomorphic(p, q)
                stdout.write(serialize_apf(q))
            except PolytopeError as exc:
                print(f"# {exc}", file=stdout)
                ok = False
            print(f"roundtrip: {'ok' if ok else 'FAIL'}", file=stdout)
            return 0 if ok else 1
        if args.command == "export-flags":
            stdout.write(export_flags(build_flag_graph(p)))
            return 0
    except (InputError, GroupTooLarge, NotTwoOrbit) as exc:
        print(f"polytwo: error: {exc}", file=stderr)
        return 2
    return 2


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
