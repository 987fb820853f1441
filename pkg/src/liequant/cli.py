"""Command-line front end.

Subcommands: check, quantize, compare, verify-artifact, catalog.
Exit codes: 0 pass, 2 mathematical defect, 3 schema error, 4 solver cap
failure, 5 equivalence not found.  Reports are deterministic for identical
inputs; timings are only included with --timestamps on.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__, catalog
from .envelope import Envelope, copoisson_axiom_defects, copoisson_delta
from .errors import (InternalCheckError, LiequantError, MathDefectError, SchemaError,
                     SolverInconsistencyError)
from .groups import (FiniteGroup, GammaLieBialgebra, GroupAction, check_action,
                     gamma_defects)
from .hquant.gammaq import (ComparisonWitness, GammaQuantization, assemble_gamma_quantization,
                            bialgebra_axiom_defects, classical_limit_check,
                            compare_pipelines, quasitriangular_gamma_quantize)
from .hquant.core import CoproductSeries, ElSeries, MapSeries
from .hquant.pipeline import gamma_v_cocycle_defects
from .hquant.solvers import (GaugeLog, algebra_compat_defect, coassoc_defect,
                             classical_limit_defect, cocycle_defect, counit_defect,
                             twist_counit_defect)
from .hquant.unknowns import set_key_order_seed
from .lie import (LieBialgebra, cocycle_defect as bialg_cocycle_defect, cojacobi_defect,
                  coboundary_cobracket, cybe_defect, invariance_defect, jacobi_defect)
from .schema import (ParsedInput, parse_document, series_from_json,
                     series_to_json)
from .sparse import El

EXIT_OK = 0
EXIT_DEFECT = 2
EXIT_SCHEMA = 3
EXIT_SOLVER = 4
EXIT_NO_WITNESS = 5


def _digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def _load_input(path: str) -> tuple[bytes, dict]:
    if path.startswith("catalog:"):
        name = path.split(":", 1)[1]
        try:
            doc = catalog.input_document(name)
        except KeyError as exc:
            raise SchemaError(str(exc), "/") from None
        raw = json.dumps(doc, sort_keys=True).encode()
        return raw, doc
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc}", path) from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", path) from None
    return raw, doc


def _emit(report: dict, args) -> None:
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
        return
    print(f"liequant {report.get('tool_version', __version__)}")
    for check in report.get("checks", []):
        line = f"  [{check['status']:>5}] {check['name']}"
        if check.get("detail"):
            line += f"  ({check['detail']})"
        print(line)
    for key in ("artifact", "witness"):
        if key in report and isinstance(report[key], str):
            print(f"{key}: {report[key]}")
    if "exit" in report:
        print(f"exit: {report['exit']}")


def _base_report(raw: bytes, args) -> dict:
    report = {
        "tool_version": __version__,
        "input_digest": _digest(raw),
        "checks": [],
    }
    if args.seed_order is not None:
        report["seed_order"] = args.seed_order
    return report


def _add_check(report: dict, name: str, ok: bool | None, detail: str = ""):
    status = "skipped" if ok is None else ("pass" if ok else "fail")
    entry = {"name": name, "status": status}
    if detail:
        entry["detail"] = detail
    report["checks"].append(entry)
    return status == "fail"


def _first_keys(mapping, limit=4) -> str:
    keys = sorted(str(k) for k in (mapping or {}))
    head = keys[:limit]
    more = "" if len(keys) <= limit else f" (+{len(keys) - limit})"
    return "; ".join(head) + more


def run_classical_checks(parsed: ParsedInput, report: dict) -> bool:
    """All applicable classical checks; returns True if any defect found."""
    bialg = parsed.bialgebra
    failed = False

    defect = jacobi_defect(bialg.lie)
    failed |= _add_check(report, "jacobi", defect.is_zero(),
                         "" if defect.is_zero() else _first_keys(defect.data))
    defect = cojacobi_defect(bialg)
    failed |= _add_check(report, "co-jacobi", defect.is_zero(),
                         "" if defect.is_zero() else _first_keys(defect.data))
    defect = bialg_cocycle_defect(bialg)
    failed |= _add_check(report, "cocycle", defect.is_zero(),
                         "" if defect.is_zero() else _first_keys(defect.data))

    if parsed.quasitriangular is not None:
        qt = parsed.quasitriangular
        defect = cybe_defect(qt.lie, qt.r)
        failed |= _add_check(report, "cybe", defect.is_zero(),
                             "" if defect.is_zero() else _first_keys(defect.data))
        defect = invariance_defect(qt.lie, qt.t)
        failed |= _add_check(report, "t-invariance", defect.is_zero(),
                             "" if defect.is_zero() else _first_keys(defect.data))
        derived = coboundary_cobracket(qt.lie, qt.r)
        same = all(derived[i] == bialg.cobracket_basis(i) for i in range(bialg.dim))
        failed |= _add_check(report, "r-cobracket-consistency", same)
    else:
        _add_check(report, "cybe", None, "no r-matrix")

    if parsed.gamma is not None:
        gamma = parsed.gamma
        action_report = check_action(gamma.action, bialg.lie)
        failed |= _add_check(report, "action", action_report.all_zero,
                             "" if action_report.all_zero else
                             _first_keys(action_report.hom_defects or action_report.aut_defects))
        gd = gamma_defects(gamma)
        for name, table in (("gamma-(a)", gd.condition_a), ("gamma-(b)", gd.condition_b),
                            ("gamma-(c)", gd.condition_c)):
            failed |= _add_check(report, name, not table,
                                 "" if not table else _first_keys(table))
        failed |= _add_check(report, "gamma-identity-twist", gd.identity_twist is None)

        structure = copoisson_delta(gamma)
        d_in = int(parsed.options.get("copoisson_degree", 2))
        rep = copoisson_axiom_defects(structure, d_in, 2 * d_in + 2)
        for part, table in sorted(rep.items()):
            failed |= _add_check(report, f"copoisson-{part}", not table,
                                 "" if not table else _first_keys(table))
    else:
        _add_check(report, "gamma-(a)", None, "no group")
    return failed


def cmd_check(args) -> int:
    raw, doc = _load_input(args.input)
    report = _base_report(raw, args)
    parsed = parse_document(doc)
    failed = run_classical_checks(parsed, report)
    report["exit"] = EXIT_DEFECT if failed else EXIT_OK
    _emit(report, args)
    return report["exit"]


def _trivial_gamma(bialg: LieBialgebra) -> GammaLieBialgebra:
    from .tensors import Tensor
    group = FiniteGroup.trivial()
    action = GroupAction.trivial(group, bialg.space)
    return GammaLieBialgebra(bialg, action, [Tensor.zero((bialg.space,) * 2)])


def _assembly_to_json(assembly: GammaQuantization) -> dict:
    grp = assembly.group
    env = assembly.env
    out = {
        "order": assembly.order,
        "coproduct": {str(i): series_to_json(assembly.cop.gen_series(i).coeffs)
                      for i in range(env.dim)},
        "twist_family": {grp.labels[g]: series_to_json(s.coeffs)
                         for g, s in sorted(assembly.f_map.items())},
        "transport": {grp.labels[g]: {str(i): series_to_json(t.gen_series(i).coeffs)
                                      for i in range(env.dim)}
                      for g, t in sorted(assembly.t_map.items())},
        "compositions": {f"{grp.labels[g]},{grp.labels[h]}": series_to_json(s.coeffs)
                         for (g, h), s in sorted(assembly.v_map.items())},
    }
    # the intertwiners are derivable from the transport maps; stored for
    # direct inspection of the solved family
    intertwiners = {}
    for g, t in sorted(assembly.t_map.items()):
        theta = MapSeries.from_linear(env, assembly.order, assembly.action.theta(g))
        iso = theta.compose(t.inverse())
        intertwiners[grp.labels[g]] = {str(i): series_to_json(iso.gen_series(i).coeffs)
                                       for i in range(env.dim)}
    out["intertwiners"] = intertwiners
    return out


def _assembly_from_json(data: dict, parsed: ParsedInput) -> GammaQuantization:
    gamma = parsed.gamma or _trivial_gamma(parsed.bialgebra)
    env = Envelope(parsed.bialgebra.lie)
    grp = gamma.group
    order = int(data["order"])
    n = env.dim

    def tables_from(tbl: dict) -> list[dict[int, El]]:
        tables: list[dict[int, El]] = [{} for _ in range(order + 1)]
        for gen, series in tbl.items():
            coeffs = series_from_json(series, 2, where=f"/coproduct/{gen}")
            for k, el in enumerate(coeffs):
                if el:
                    tables[k][int(gen)] = el
        return tables

    cop = CoproductSeries(env, order, tables_from(data["coproduct"]))
    f_map = {}
    for label, series in data["twist_family"].items():
        g = grp.labels.index(label)
        f_map[g] = ElSeries(env, 2, series_from_json(series, 2, where=f"/twist_family/{label}"))
    t_map = {}
    for label, tbl in data["transport"].items():
        g = grp.labels.index(label)
        tables: list[dict[int, El]] = [{} for _ in range(order + 1)]
        for gen, series in tbl.items():
            coeffs = series_from_json(series, 1, where=f"/transport/{label}")
            for k, el in enumerate(coeffs):
                if el:
                    tables[k][int(gen)] = el
        t_map[g] = MapSeries(env, order, tables)
    v_map = {}
    for key, series in data["compositions"].items():
        gl, hl = key.split(",")
        pair = (grp.labels.index(gl), grp.labels.index(hl))
        v_map[pair] = ElSeries(env, 1, series_from_json(series, 1, where=f"/compositions/{key}"))
    return GammaQuantization(env, gamma.action, cop, f_map, t_map, v_map, order)


def _verify_assembly(assembly: GammaQuantization, parsed: ParsedInput, report: dict,
                     d_in: int) -> bool:
    """Exact re-verification of a (re)constructed assembly."""
    gamma = parsed.gamma or _trivial_gamma(parsed.bialgebra)
    bialg = parsed.bialgebra
    failed = False
    failed |= _add_check(report, "coproduct-algebra-map",
                         not algebra_compat_defect(bialg, assembly.cop))
    failed |= _add_check(report, "coproduct-coassociativity",
                         not coassoc_defect(assembly.cop))
    failed |= _add_check(report, "coproduct-counit", not counit_defect(assembly.cop))
    failed |= _add_check(report, "coproduct-classical-limit",
                         not classical_limit_defect(bialg, assembly.cop))
    grp = assembly.group
    cocycle_ok = True
    counit_ok = True
    limit_ok = True
    for g in grp.elements():
        fs = assembly.f_map[g]
        if not cocycle_defect(assembly.cop, fs).is_zero():
            cocycle_ok = False
        if twist_counit_defect(assembly.env, fs):
            counit_ok = False
        if assembly.order >= 1:
            one = fs.coeffs[1]
            anti = one - one.map_keys(lambda key: (key[1], key[0]))
            if anti != assembly.env.embed_tensor(gamma.f(g)):
                limit_ok = False
    failed |= _add_check(report, "twist-cocycle", cocycle_ok)
    failed |= _add_check(report, "twist-counit", counit_ok)
    failed |= _add_check(report, "twist-classical-limit", limit_ok)
    from .hquant.solvers import iso_intertwine_defect, twisted_coproduct
    intertwine_ok = True
    for g in grp.elements():
        theta = assembly.action.theta(g)
        iso = MapSeries.from_linear(assembly.env, assembly.order, theta).compose(
            assembly.t_map[g].inverse())
        defect = iso_intertwine_defect(
            twisted_coproduct(assembly.cop, assembly.f_map[g]),
            assembly.cop.pushforward(theta), iso)
        if defect:
            intertwine_ok = False
    failed |= _add_check(report, "transport-intertwining", intertwine_ok)
    from .hquant.gammaq import _verify_family
    try:
        _verify_family(assembly)
        failed |= _add_check(report, "family-identities", True)
    except InternalCheckError as exc:
        failed |= _add_check(report, "family-identities", False, str(exc))
    axioms = bialgebra_axiom_defects(assembly, d_in)
    failed |= _add_check(report, "bialgebra-axioms", axioms.all_zero,
                         "" if axioms.all_zero else str(axioms.summary()))
    vdef = gamma_v_cocycle_defects(assembly)
    failed |= _add_check(report, "composition-coherence", not vdef,
                         "" if not vdef else _first_keys(vdef))
    limits = classical_limit_check(assembly, gamma, d_in)
    failed |= _add_check(report, "classical-limit-slices",
                         all(not v for v in limits.values()))
    return failed


def cmd_quantize(args) -> int:
    raw, doc = _load_input(args.input)
    report = _base_report(raw, args)
    parsed = parse_document(doc)
    if run_classical_checks(parsed, report):
        report["exit"] = EXIT_DEFECT
        _emit(report, args)
        return EXIT_DEFECT
    gamma = parsed.gamma or _trivial_gamma(parsed.bialgebra)
    order = args.order if args.order is not None else int(parsed.options.get("order", 2))
    cap = args.degree_cap if args.degree_cap is not None else parsed.options.get("degree_cap")
    if args.seed_order is None and parsed.options.get("seed_order") is not None:
        set_key_order_seed(int(parsed.options["seed_order"]))
        report["seed_order"] = int(parsed.options["seed_order"])
    d_in = args.d_in
    log = GaugeLog()
    t0 = time.time()
    try:
        assembly = assemble_gamma_quantization(gamma, order, log=log, cap=cap)
    except SolverInconsistencyError as exc:
        report["exit"] = EXIT_SOLVER
        report["solver_error"] = str(exc)
        report["gauge_log"] = log.as_dict()
        _emit(report, args)
        return EXIT_SOLVER
    failed = _verify_assembly(assembly, parsed, report, d_in)
    elapsed = time.time() - t0
    artifact = {
        "tool_version": __version__,
        "input_digest": _digest(raw),
        "input": doc,
        "d_in": d_in,
        "gauge_log": log.as_dict(),
        "assembly": _assembly_to_json(assembly),
        "checks": report["checks"],
    }
    if args.seed_order is not None:
        artifact["seed_order"] = args.seed_order
    if args.timestamps == "on":
        artifact["timings"] = {"quantize_seconds": round(elapsed, 3)}
        report["timings"] = artifact["timings"]
    payload = json.dumps(artifact, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
        report["artifact"] = args.out
    else:
        report["artifact_inline"] = artifact
    report["exit"] = EXIT_DEFECT if failed else EXIT_OK
    _emit(report, args)
    return report["exit"]


def cmd_compare(args) -> int:
    raw, doc = _load_input(args.input)
    report = _base_report(raw, args)
    parsed = parse_document(doc)
    if parsed.quasitriangular is None or parsed.gamma is None:
        raise SchemaError("compare needs both an r-matrix and a group action", "/")
    if run_classical_checks(parsed, report):
        report["exit"] = EXIT_DEFECT
        _emit(report, args)
        return EXIT_DEFECT
    order = args.order if args.order is not None else int(parsed.options.get("order", 2))
    cap = args.degree_cap if args.degree_cap is not None else parsed.options.get("degree_cap")
    env = Envelope(parsed.bialgebra.lie)
    log = GaugeLog()
    try:
        generic = assemble_gamma_quantization(parsed.gamma, order, env=env, log=log,
                                              cap=cap)
        direct = quasitriangular_gamma_quantize(parsed.quasitriangular,
                                                parsed.gamma.action, order, env=env,
                                                log=log, cap=cap)
    except SolverInconsistencyError as exc:
        report["exit"] = EXIT_SOLVER
        report["solver_error"] = str(exc)
        _emit(report, args)
        return EXIT_SOLVER
    witness = compare_pipelines(generic, direct, window=args.d_in, log=log)
    report["gauge_log"] = log.as_dict()
    if isinstance(witness, ComparisonWitness):
        _add_check(report, "pipeline-equivalence", True)
        report["witness"] = witness.as_dict(lambda s: series_to_json(s.coeffs))
        report["exit"] = EXIT_OK
    else:
        _add_check(report, "pipeline-equivalence", False, "no witness within ladder")
        report["certificate"] = {
            "rows": {str(k): str(v) for k, v in sorted((witness.combination or {}).items())},
            "residual": str(witness.residual),
        } if witness is not None else None
        report["exit"] = EXIT_NO_WITNESS
    _emit(report, args)
    return report["exit"]


def cmd_verify_artifact(args) -> int:
    raw, artifact = _load_input(args.input)
    report = _base_report(raw, args)
    if "assembly" not in artifact or "input" not in artifact:
        raise SchemaError("not a quantization artifact", "/")
    parsed = parse_document(artifact["input"])
    if run_classical_checks(parsed, report):
        report["exit"] = EXIT_DEFECT
        _emit(report, args)
        return EXIT_DEFECT
    assembly = _assembly_from_json(artifact["assembly"], parsed)
    failed = _verify_assembly(assembly, parsed, report, int(artifact.get("d_in", 2)))
    report["exit"] = EXIT_DEFECT if failed else EXIT_OK
    _emit(report, args)
    return report["exit"]


def cmd_catalog(args) -> int:
    entries = []
    for name in catalog.names():
        doc = catalog.input_document(name)
        entries.append({
            "name": name,
            "dimension": doc["dimension"],
            "group": doc.get("group", {}).get("elements", ["-"]) if doc.get("group") else None,
            "has_r": "r" in doc,
        })
    report = {"tool_version": __version__, "catalog": entries}
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for entry in entries:
            grp = ",".join(entry["group"]) if entry["group"] else "-"
            print(f"{entry['name']:<20} dim={entry['dimension']} r={'yes' if entry['has_r'] else 'no'} group={grp}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liequant",
        description="Exact workbench for Lie bialgebras with group twist families "
                    "and their order-by-order quantization.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--timestamps", choices=("on", "off"), default="off")
        p.add_argument("--seed-order", type=int, default=None, dest="seed_order",
                       help="deterministic reshuffle of the gauge-pinning variable order")

    p = sub.add_parser("check", help="run every applicable classical check")
    p.add_argument("input", help="input JSON path or catalog:NAME")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("quantize", help="solve and assemble the graded quantization")
    p.add_argument("input")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--degree-cap", type=int, default=None, dest="degree_cap")
    p.add_argument("--d-in", type=int, default=2, dest="d_in",
                   help="degree window for the axiom verification")
    p.add_argument("--out", default=None, help="artifact output path")
    common(p)
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("compare", help="compare generic and direct quantizations")
    p.add_argument("input")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--degree-cap", type=int, default=None, dest="degree_cap")
    p.add_argument("--d-in", type=int, default=2, dest="d_in")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify-artifact", help="re-verify a quantization artifact")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_verify_artifact)

    p = sub.add_parser("catalog", help="list shipped examples")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed_order", None) is not None:
        set_key_order_seed(args.seed_order)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(json.dumps({"error": "schema", "message": str(exc),
                          "location": exc.location}, sort_keys=True, indent=2),
              file=sys.stderr)
        return EXIT_SCHEMA
    except SolverInconsistencyError as exc:
        print(json.dumps({"error": "solver", "message": str(exc)}, sort_keys=True,
                         indent=2), file=sys.stderr)
        return EXIT_SOLVER
    except (MathDefectError, InternalCheckError) as exc:
        print(json.dumps({"error": "defect", "message": str(exc)}, sort_keys=True,
                         indent=2), file=sys.stderr)
        return EXIT_DEFECT
    except LiequantError as exc:
        print(json.dumps({"error": "other", "message": str(exc)}, sort_keys=True,
                         indent=2), file=sys.stderr)
        return EXIT_DEFECT
    finally:
        set_key_order_seed(None)


if __name__ == "__main__":
    sys.exit(main())
