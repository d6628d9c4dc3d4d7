"""Command-line interface: ``p1codes <command> [options]``.

Every command prints (or writes with ``-o``) one JSON document that embeds the
run configuration. Exit codes: 0 all checks passed, 1 a check failed,
2 usage, input or budget error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, scenarios
from .agcode import (ag_code, dual_code, formally_self_dual, goppa_lower_bound,
                     injectivity_report, mds_certificate, monomial_equiv_to_grs, rescale_columns,
                     spectrum_exact, spectrum_mds, weight_witness)
from .artifacts import (FORMAT_VERSION, code_from_json, code_to_json, dumps, element_to_json,
                        matrix_to_json, moebius_to_json, parse_divisor,
                        parse_moebius, parse_points, point_json_list, write_atomic)
from .autgroup import (aut_DE_scan, coordinate_perm, lift_consistency_check, perm_action_table,
                       perm_group_exhaustive, preserves_code, rep_table, rep_structure_check)
from .config import RunConfig
from .gfpoly import BudgetError, FieldError, field_make, field_of_order, prime_power
from .groupaction import (FAMILIES, catalog_entry, catalog_labels, expected_ramification,
                          field_sufficient, group_closure, make_family, orbit_polynomial_report,
                          ramification_profile, search_field, special_orbits)
from .linalg import rowspace_equal
from .projline import Divisor, MoebiusMap, divisor_to_json


class UsageError(Exception):
    pass


def _params(args) -> dict:
    fam = args.family
    if fam in ("cyclic", "dihedral"):
        if args.delta is None:
            raise UsageError(f"--delta is required for {fam}")
        return {"delta": args.delta}
    if fam == "semidirect":
        if args.m is None:
            raise UsageError("--m is required for semidirect")
        return {"t": args.t, "m": args.m}
    if fam in ("psl2", "pgl2"):
        return {"t": args.t}
    return {}


def _field(args):
    if getattr(args, "q", None):
        return field_of_order(args.q)
    raise UsageError("--q is required")


def _group(args, F, cfg: RunConfig):
    """Group from --family/params or from repeated --gen a,b,c,d (None if neither given)."""
    gens = getattr(args, "gen", None) or []
    if getattr(args, "family", None) in (None, "custom", "trivial"):
        if args.family == "trivial" and not gens:
            return group_closure([MoebiusMap.identity(F)], 1, "trivial")
        if not gens:
            return None
        return group_closure([parse_moebius(F, g) for g in gens], cfg.closure_bound)
    params = _params(args)
    if args.p is not None and args.p != F.p:
        raise UsageError(f"--p {args.p} does not match the characteristic of GF({F.q})")
    return make_family(args.family, params, F, bound=cfg.closure_bound)


def _group_json(G) -> dict:
    return {"family": G.family, "params": G.params, "order": G.order,
            "generators": [moebius_to_json(g) for g in G.generators]}


def _analysis_field(family: str, params: dict, q: int):
    """For PSL/PGL the special orbits live over GF(p^(2t)); use the compositum with GF(q)."""
    p, k = prime_power(q)
    if family in ("psl2", "pgl2"):
        t = params["t"]
        kk = k
        while kk % (2 * t):
            kk += k
        return field_make(p, kk)
    return field_of_order(q)


# -- commands ------------------------------------------------------------------

def cmd_orbits(args, cfg: RunConfig):
    fam = args.family
    params = _params(args)
    pk = prime_power(args.q)
    if pk is None:
        raise UsageError(f"{args.q} is not a prime power")
    if args.p is not None and args.p != pk[0]:
        raise UsageError(f"--p {args.p} does not match q = {args.q}")
    A = _analysis_field(fam, params, args.q)
    suff = field_sufficient(fam, params, A.q, budget=cfg.enumeration_budget)
    report = {"family": fam, "params": params, "q": args.q, "analysis_q": A.q,
              "sufficient": suff.ok, "diagnostics": suff.diagnostics}
    if not suff.ok and not args.force:
        report["error"] = "field insufficient (use --force to analyse anyway)"
        return report, 2
    try:
        G = make_family(fam, params, field_of_order(args.q), bound=cfg.closure_bound)
    except FieldError as exc:
        report["error"] = str(exc)
        return report, 2
    GA = G if A.q == args.q else make_family(fam, params, A, bound=cfg.closure_bound)
    report["order"] = G.order
    report["special_orbits"] = [{"size": len(O), "points": point_json_list(O)}
                                for O in special_orbits(G, cfg.enumeration_budget)]
    row = expected_ramification(fam, params, A.p)
    try:
        prof = ramification_profile(GA, budget=cfg.enumeration_budget)
        report["ramification_profile"] = sorted(prof.indices, reverse=True)
        report["row_match"] = prof == row
    except FieldError as exc:
        report["ramification_profile"] = None
        report["row_match"] = False
        report["diagnostics"].append(str(exc))
    report["expected_row"] = sorted(row, reverse=True)
    cat = []
    for label in catalog_labels(fam):
        try:
            cat.append(orbit_polynomial_report(GA, catalog_entry(fam, label, params, A)))
        except FieldError as exc:
            cat.append({"label": label, "verdict": False, "detail": str(exc)})
    report["catalog"] = cat
    # formulas kept only in their printed (uncorrected) form are diagnostic
    ok = report["row_match"] and all(c["verdict"] for c in cat if not c["label"].endswith("_printed"))
    return report, 0 if ok else 1


def cmd_search_field(args, cfg: RunConfig):
    params = _params(args)
    q = search_field(args.family, params, args.qmax, args.qmin)
    return {"family": args.family, "params": params, "qmax": args.qmax, "q": q}, 0


def _construct_code(args, cfg):
    if args.example:
        sc = scenarios.build(args.example, args.q)
        code = ag_code(sc.D, sc.E, sc.field)
        prov = {"scenario": sc.name, "notes": sc.notes + code.notes}
        if sc.group is not None:
            prov["group"] = {"family": sc.group.family, "params": sc.group.params}
        return code, prov
    F = _field(args)
    if args.D is None:
        raise UsageError("give --example or --D with --E/--points")
    D = parse_divisor(F, args.D)
    if args.points:
        E = Divisor.from_points(parse_points(F, args.points))
    elif args.E:
        E = parse_divisor(F, args.E)
    else:
        raise UsageError("give --E or --points")
    code = ag_code(D, E, F)
    return code, {"scenario": None, "notes": list(code.notes)}


def cmd_construct(args, cfg: RunConfig):
    code, prov = _construct_code(args, cfg)
    out = {"kind": "code", **code_to_json(code), "provenance": prov}
    return out, 0


def _load(path):
    with open(path) as fh:
        art = json.load(fh)
    return art.get("result", art) if "generator" not in art else art


def cmd_analyze(args, cfg: RunConfig):
    art = _load(args.artifact)
    code = code_from_json(art)
    F, n, k = code.field, code.n, code.k
    rep = {"n": n, "k": k, "q": F.q}
    checks = []
    src_ok = False
    if code.source is not None:
        D, E = code.source
        ref = ag_code(D, E, F)
        src_ok = ref.n == n and rowspace_equal(F, ref.generator, code.generator)
        rep["source_consistent"] = src_ok
        checks.append(src_ok)
        if src_ok:
            rep["injectivity"] = injectivity_report(D, E, F)
    mode = args.mds
    if mode == "auto":
        mode = "exact"
        try:
            cert = mds_certificate(code, "exact", budget=cfg.enumeration_budget)
        except BudgetError:
            mode = "sampled"
    if mode == "sampled":
        cert = mds_certificate(code, "sampled", trials=args.trials or cfg.sample_trials, seed=cfg.seed)
    elif args.mds == "exact":
        cert = mds_certificate(code, "exact", budget=cfg.enumeration_budget)
    rep["mds"] = {"mode": cert.mode, "verdict": cert.verdict, "trials": cert.trials, "seed": cert.seed,
                  "distance": cert.distance,
                  "witness_columns": [c + 1 for c in cert.witness] if cert.witness else None}
    checks.append(cert.verdict)
    if F.q**k <= cfg.enumeration_budget:
        spec = spectrum_exact(code, cfg.enumeration_budget)
        rep["spectrum"] = list(spec.counts)
        rep["min_distance"] = spec.min_weight()
        if cert.verdict and k:
            rep["spectrum_matches_mds_formula"] = spec == spectrum_mds(n, k, n + 1 - k, F.q)
            checks.append(rep["spectrum_matches_mds_formula"])
    elif cert.verdict and k:
        rep["spectrum_formula"] = [str(a) for a in spectrum_mds(n, k, n + 1 - k, F.q).counts]
    dual = dual_code(code)
    rep["dual"] = {"n": n, "k": dual.k, "d": (k + 1 if cert.verdict else None)}
    if cert.verdict:
        dual_cert = cert  # the dual of an MDS code is MDS
        try:
            rep["formally_self_dual"] = formally_self_dual(code, cfg.enumeration_budget, (cert, dual_cert))
        except BudgetError as exc:
            rep["formally_self_dual"] = None
            rep["fsd_detail"] = str(exc)
    else:
        try:
            rep["formally_self_dual"] = formally_self_dual(code, cfg.enumeration_budget)
        except BudgetError:
            rep["formally_self_dual"] = None
    if src_ok:
        D, E = code.source
        rep["goppa_lower_bound"] = goppa_lower_bound(D, E)
        if 0 <= D.degree < n:
            w, _, chosen = weight_witness(D, E, F)
            wt = int((w != 0).sum())
            rep["weight_witness"] = {"weight": wt, "vanishing_points": point_json_list(chosen),
                                     "codeword": [element_to_json(F, c) for c in w]}
            checks.append(wt == n - D.degree and code.contains(w))
        affine_E = not any(P.is_infinity for P in E.support())
        inf_only = all(P.is_infinity for P in D.support())
        if affine_E and not inf_only:
            mult, target = monomial_equiv_to_grs(D, E, F)
            same = rowspace_equal(F, rescale_columns(code, mult), target.generator)
            rep["monomial_equivalence"] = {"multipliers": [list(m.coeffs) for m in mult], "verified": same}
            checks.append(same)
    return rep, 0 if all(checks) else 1


def cmd_autos(args, cfg: RunConfig):
    art = _load(args.artifact)
    code = code_from_json(art)
    F = code.field
    if code.source is None:
        raise UsageError("artifact has no D, E; the group action needs evaluation points")
    D, E = code.source
    if args.family is None and not args.gen:
        grp = art.get("provenance", {}).get("group")
        if not grp:
            raise UsageError("give a group (--family or --gen)")
        G = make_family(grp["family"], grp["params"], F, bound=cfg.closure_bound)
    else:
        G = _group(args, F, cfg)
    if len(E.support()) != code.n:
        raise UsageError(f"code length {code.n} does not match |supp E| = {len(E.support())}")
    rep = {"group": _group_json(G), "n": code.n, "k": code.k}
    try:
        table = perm_action_table(G, E)
    except ValueError as exc:
        raise UsageError(str(exc))
    per_gen = [{"generator": moebius_to_json(g), "permutation": coordinate_perm(g, E).one_indexed(),
                "preserves": preserves_code(code, coordinate_perm(g, E))} for g in G.generators]
    verdicts = [preserves_code(code, table[g]) for g in G.elements]
    rep["generators"] = per_gen
    rep["elements_preserving"] = sum(verdicts)
    rep["elements_total"] = len(verdicts)
    rep["faithful"] = table.faithful
    rep["D_stable"] = D.stabilized_by(G)
    ok = all(verdicts)
    if code.n <= cfg.sn_scan_max_n:
        rep["perm_group_order"] = len(perm_group_exhaustive(code, cfg.sn_scan_max_n))
    if F.q <= cfg.pgl_scan_max_q:
        A = aut_DE_scan(D, E, F, cfg.pgl_scan_max_q)
        rep["aut_DE_order"] = A.order
        rep["group_inside_aut_DE"] = set(G.elements) <= set(A.elements)
        if code.n <= cfg.sn_scan_max_n:
            lc = lift_consistency_check(D, E, F, cfg.sn_scan_max_n, cfg.pgl_scan_max_q)
            rep["lift_consistency"] = lc
            if lc["hypothesis_met"]:
                ok = ok and lc["verdict"]
    return rep, 0 if ok else 1


def cmd_rep(args, cfg: RunConfig):
    F = _field(args)
    G = _group(args, F, cfg)
    if G is None:
        G = group_closure([MoebiusMap.identity(F)], 1, "trivial")
    D = parse_divisor(F, args.D)
    if not D.stabilized_by(G):
        raise UsageError("D is not stabilised by the group")
    table = rep_table(G, D)
    checks = rep_structure_check(G, D)
    rep = {"group": _group_json(G), "D": divisor_to_json(D), "dimension": table.basis.dimension,
           "basis_tags": _tags_json(table.basis.tags),
           "evaluation_points": point_json_list(table.points),
           "matrices": [{"element": moebius_to_json(g), "matrix": matrix_to_json(F, table[g])}
                        for g in G.elements]}
    rep["checks"] = checks
    keys = ["homomorphism", "identity", "invertible", "constants_fixed", "triangular"]
    ok = all(checks.get(k, True) for k in keys)
    if "submodule" in checks:
        ok = ok and checks["submodule"]["embedded"] and checks["submodule"]["stable"]
    return rep, 0 if ok else 1


def _tags_json(tags):
    from .projline import point_to_json
    return [None if t is None else [point_to_json(t[0]), t[1]] for t in tags]


COMMANDS = {"orbits": cmd_orbits, "construct": cmd_construct, "analyze": cmd_analyze,
            "autos": cmd_autos, "rep": cmd_rep, "search-field": cmd_search_field}


def _add_group_args(p, required=False):
    p.add_argument("--family", choices=FAMILIES + ("trivial", "custom"), required=required)
    p.add_argument("--delta", type=int)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=int, help="characteristic (checked against --q)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="p1codes", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the JSON report here (atomically)")
    common.add_argument("--seed", type=int)
    common.add_argument("--enumeration-budget", type=int)
    common.add_argument("--sample-trials", type=int)
    common.add_argument("--closure-bound", type=int)
    common.add_argument("--sn-scan-max-n", type=int)
    common.add_argument("--pgl-scan-max-q", type=int)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbits", parents=[common], help="orbits, ramification and catalog checks")
    _add_group_args(p, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--force", action="store_true")

    p = sub.add_parser("construct", parents=[common], help="build C(D, E) as a JSON artifact")
    p.add_argument("--example", choices=scenarios.SCENARIOS)
    p.add_argument("--q", type=int)
    p.add_argument("--D")
    p.add_argument("--E")
    p.add_argument("--points")

    p = sub.add_parser("analyze", parents=[common], help="parameters of a code artifact")
    p.add_argument("artifact")
    p.add_argument("--mds", choices=("auto", "exact", "sampled"), default="auto")
    p.add_argument("--trials", type=int)

    p = sub.add_parser("autos", parents=[common], help="automorphisms induced by a group")
    p.add_argument("artifact")
    _add_group_args(p)
    p.add_argument("--gen", action="append", help="Moebius generator a,b,c,d (repeatable)")

    p = sub.add_parser("rep", parents=[common], help="the representation on L(D)")
    _add_group_args(p)
    p.add_argument("--gen", action="append", help="Moebius generator a,b,c,d (repeatable)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--D", required=True)

    p = sub.add_parser("search-field", parents=[common], help="smallest sufficient field")
    _add_group_args(p, required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--qmin", type=int, default=7)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = None
    try:
        cfg = RunConfig.from_env(seed=args.seed, enumeration_budget=args.enumeration_budget,
                                 sample_trials=args.sample_trials, closure_bound=args.closure_bound,
                                 sn_scan_max_n=args.sn_scan_max_n, pgl_scan_max_q=args.pgl_scan_max_q,
                                 output_path=args.output)
        body, code = COMMANDS[args.command](args, cfg)
    except (UsageError, BudgetError, FieldError, ValueError, OSError) as exc:
        body, code = {"error": f"{type(exc).__name__}: {exc}"}, 2
    doc = {"command": args.command, "format_version": FORMAT_VERSION, "tool_version": __version__,
           "config": cfg.to_json() if cfg else None, "result": body}
    text = dumps(doc)
    if args.output and code != 2:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
