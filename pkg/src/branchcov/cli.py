"""Command line front end. Every subcommand prints one JSON report.

Exit codes: 0 computed with a positive verdict, 1 computed with a negative or
inconclusive verdict, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Optional, Sequence

from . import floer, matrices, pell, sigma, tangle, twobridge


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").strip("[]()").split(",") if x]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _matrix_arg(args, file_attr: str = "matrix", row_attr: str = "first_row") -> matrices.IntMatrix:
    path = getattr(args, file_attr, None)
    row = getattr(args, row_attr, None)
    if path:
        return matrices.as_matrix(_load_json(path))
    if row:
        return matrices.circulant_from_first_row(_ints(row))
    raise InputError(f"need --{file_attr.replace('_', '-')} or --{row_attr.replace('_', '-')}")


def _braid(args) -> tangle.BraidWord:
    return tangle.BraidWord(args.strands, tuple(_ints(args.braid)))


def _component_info(item: Any) -> floer.NuSharpInfo:
    if isinstance(item, str):
        return floer.nu_sharp(floer.parse_knot_class(item))
    if isinstance(item, dict):
        return floer.NuSharpInfo(item.get("nu"), item.get("shape"), item.get("provenance", "user"))
    raise InputError(f"component entry must be a knot class string or {{nu, shape}}, got {item!r}")


class Result:
    def __init__(self, result: Any, ok: bool, provenance: Sequence[str] = (), warnings: Sequence[str] = ()):
        self.result = result
        self.ok = ok
        self.provenance = list(provenance)
        self.warnings = list(warnings)


# -- handlers -----------------------------------------------------------------


def cmd_sicup_verify(args) -> Result:
    M = _matrix_arg(args)
    rep = matrices.verify_sicup(M)
    return Result({"matrix": M.to_list(), **rep.as_dict(), "verdict": rep.verdict}, rep.verdict)


def cmd_sicup_enumerate(args) -> Result:
    en = matrices.enumerate_sicup(args.size, args.c1_max)
    rows = [list(matrices.first_row(M)) for M in en.matrices]
    return Result(
        {"d": en.d, "c1_max": en.c1_max, "count": len(rows), "first_rows": rows, "candidates_checked": en.candidates_checked},
        True,
        [en.bound_note],
    )


def cmd_pell_solve(args) -> Result:
    if args.admissible:
        sols = pell.admissible_solutions(args.count)
    else:
        sols = pell.solve_pell_5_4(args.count, require_a_positive=not args.allow_negative)
    return Result({"solutions": [list(s.as_tuple()) for s in sols]}, True)


def cmd_pell_m5(args) -> Result:
    out = []
    for s in pell.admissible_solutions(args.count):
        prm = pell.phi_inverse(s)
        out.append({"pell": list(s.as_tuple()), "params": [prm.x, prm.l, prm.m], "first_row": list(prm.first_row)})
    return Result({"count": len(out), "matrices": out}, True)


def cmd_tangle_components(args) -> Result:
    w = tangle.power(_braid(args), args.power)
    comps = tangle.closure_components(w)
    return Result({"count": comps.count, "labeling": list(comps.labeling)}, True)


def cmd_tangle_linking(args) -> Result:
    w = tangle.power(_braid(args), args.power)
    framings = _ints(args.framings) if args.framings else None
    res = tangle.linking_matrix_of_closure(w, base_framing=args.framing, framings=framings)
    circ = tangle.circulant_block_check(res.matrix, res.matrix.dim) if res.matrix.dim else True
    return Result(
        {
            "matrix": res.matrix.to_list(),
            "crossing_sums": {f"{a},{b}": s for (a, b), s in res.crossing_sums.items()},
            "diagonal_rule": res.diagonal_rule,
            "base_framing": res.base_framing,
            "labeling": list(res.labeling),
            "circulant": circ,
        },
        True,
        ["off-diagonal: half signed inter-component crossing count", f"diagonal: {res.diagonal_rule}"],
    )


def cmd_tangle_unknot(args) -> Result:
    chk = tangle.unknot_necessary_check(_braid(args))
    return Result(chk.as_dict(), chk.passed)


def _sigma_params(args) -> sigma.SigmaParams:
    return sigma.SigmaParams(args.m, tuple(_ints(args.c)))


def cmd_sigma_check(args) -> Result:
    p = _sigma_params(args)
    cf = sigma.closed_form_first_row(p)
    if args.target or args.target_row:
        A = _matrix_arg(args, "target", "target_row")
        prov = ["target: user"]
    else:
        A = cf.matrix()
        prov = ["target: closed-form first row, " + cf.note]
    rep = sigma.check_adapted(p, A)
    try:
        cert = sigma.identify_L1(p).as_dict()
    except sigma.CertificateError as exc:
        cert = {"error": str(exc), "region": exc.region}
    sic = matrices.verify_sicup(A)
    out = rep.as_dict()
    out.update({"target_sicup": sic.verdict, "l1_certificate": cert})
    return Result(out, rep.verdict and sic.verdict, prov, rep.warnings)


def cmd_sigma_linking(args) -> Result:
    p = _sigma_params(args)
    bf = sigma.brute_force_linking(p)
    cf = sigma.closed_form_first_row(p)
    match = bf == cf.matrix()
    return Result(
        {
            "diagram_matrix": bf.to_list(),
            "closed_form_row": list(cf.row),
            "closed_form_entries": {str(k): v for k, v in cf.formula_entries.items()},
            "match": match,
        },
        match,
        [cf.note],
    )


def cmd_floer_nu(args) -> Result:
    cat = floer.load_catalog(args.catalog) if args.catalog else None
    info = floer.nu_sharp(floer.parse_knot_class(args.knot), cat)
    return Result(info.as_dict(), info.known, [info.provenance])


def _info_from_args(args) -> floer.NuSharpInfo:
    if args.knot:
        cat = floer.load_catalog(args.catalog) if args.catalog else None
        return floer.nu_sharp(floer.parse_knot_class(args.knot), cat)
    if args.nu is None:
        raise InputError("need --knot or --nu")
    return floer.NuSharpInfo(args.nu, args.shape, "user")


def cmd_floer_trace(args) -> Result:
    info = _info_from_args(args)
    try:
        trivial = floer.trace_map_trivial(info, args.n)
    except floer.InconclusiveError as exc:
        return Result({"trivial": None, "inconclusive": str(exc), "info": info.as_dict()}, False)
    return Result({"trivial": trivial, "n": args.n, "info": info.as_dict()}, trivial, [info.provenance])


def cmd_floer_thm(args) -> Result:
    A = matrices.as_matrix(_load_json(args.matrix))
    comps = _load_json(args.components)
    if not isinstance(comps, list):
        raise InputError("components JSON must be a list")
    infos = [_component_info(c) for c in comps]
    try:
        v = floer.thm_nu_applies(A, infos)
    except floer.NotSymmetricMatrixError as exc:
        raise InputError(str(exc)) from exc
    except (floer.NotNegativeDefiniteError, floer.NotUnimodularError) as exc:
        return Result({"applies": False, "rejected": str(exc)}, False)
    return Result(v.as_dict(), v.applies, [i.provenance for i in infos])


def _fraction(args) -> twobridge.TwoBridgeFraction:
    return twobridge.TwoBridgeFraction.parse(args.fraction)


def cmd_tb_cf(args) -> Result:
    cf = twobridge.even_cf(_fraction(args))
    return Result(
        {"terms": list(cf.terms), "convention": cf.convention, "q_used": cf.q_used, "value": str(cf.value())}, True
    )


def cmd_tb_alexander(args) -> Result:
    cf = twobridge.even_cf(_fraction(args))
    V = twobridge.seifert_from_even_cf(cf)
    delta = twobridge.alexander_poly(V)
    return Result({"seifert": V.to_list(), "alexander": delta.to_list(), "alexander_str": str(delta)}, True)


def cmd_tb_report(args) -> Result:
    rep = twobridge.branched_cover_report(_fraction(args), args.dmax)
    return Result(rep.as_dict(), True, [f"continued fraction convention: {rep.cf.convention}"])


def cmd_pipeline(args) -> Result:
    w = _braid(args)
    d = args.d
    warnings: list[str] = []
    unknot = tangle.unknot_necessary_check(w)
    wd = tangle.power(w, d)
    L = tangle.linking_matrix_of_closure(wd, base_framing=args.framing).matrix
    sic = matrices.verify_sicup(L)
    supplied = floer.parse_knot_class(args.component_class) if args.component_class else None
    classes = []
    for c in range(1, L.dim + 1):
        diag = sigma.diagram_component_class(wd, c)
        if supplied is not None:
            if diag is not None and diag != supplied:
                warnings.append(f"component {c}: supplied {supplied} differs from diagram-derived {diag}")
            classes.append((supplied, diag))
        else:
            classes.append((diag if diag is not None else floer.Unknown(f"L{c}"), diag))
    adapted = sigma.check_adapted_braid(w, d, L, supplied, base_framing=args.framing)
    mirrored = [floer.nu_sharp(floer.mirror(k)) for k, _ in classes]
    thm: dict
    applies = False
    if sic.verdict:
        v = floer.thm_nu_applies(matrices.negate(L), mirrored)
        thm = v.as_dict()
        applies = v.applies
    else:
        thm = {"applies": False, "rejected": "linking matrix is not SICUP"}
    verdict = unknot.passed and sic.verdict and applies
    return Result(
        {
            "unknot_check": unknot.as_dict(),
            "linking_matrix": L.to_list(),
            "sicup": {**sic.as_dict(), "verdict": sic.verdict},
            "component_classes": [str(k) for k, _ in classes],
            "diagram_component_classes": [None if dg is None else str(dg) for _, dg in classes],
            "adapted": adapted.as_dict(),
            "thm_nu_mirrored": thm,
            "homology_sphere": sic.verdict,
            "verdict": verdict,
        },
        verdict,
        ["linking matrix with row-sum diagonal", "mirror: A -> -A, nu -> -nu"] + [m.provenance for m in mirrored[:1]],
        warnings,
    )


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="branchcov", description="Branched-cover SU(2) criteria toolkit")
    ap.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = ap.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def group(name):
        g = sub.add_parser(name)
        g.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        return g.add_subparsers(dest="action", required=True, parser_class=_Parser)

    def cmd(g, name, fn):
        p = g.add_parser(name)
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--json", action="store_true", help="accepted for compatibility; output is always JSON")
        p.set_defaults(fn=fn)
        return p

    g = group("sicup")
    p = cmd(g, "verify", cmd_sicup_verify)
    p.add_argument("--first-row")
    p.add_argument("--matrix", help="JSON file with a list of rows")
    p = cmd(g, "enumerate", cmd_sicup_enumerate)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--c1-max", type=int, required=True)

    g = group("pell")
    p = cmd(g, "solve", cmd_pell_solve)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--admissible", action="store_true")
    p.add_argument("--allow-negative", action="store_true")
    p = cmd(g, "m5", cmd_pell_m5)
    p.add_argument("--count", type=int, required=True)

    g = group("tangle")
    for name, fn in (("components", cmd_tangle_components), ("linking", cmd_tangle_linking), ("unknot-check", cmd_tangle_unknot)):
        p = cmd(g, name, fn)
        p.add_argument("--braid", required=True)
        p.add_argument("--strands", type=int, required=True)
        if name != "unknot-check":
            p.add_argument("--power", type=int, default=1)
        if name == "linking":
            p.add_argument("--framing", type=int, default=1)
            p.add_argument("--framings", help="explicit diagonal, overrides the row-sum rule")

    g = group("sigma")
    p = cmd(g, "check", cmd_sigma_check)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--target", help="JSON matrix file")
    p.add_argument("--target-row", help="first row of a circulant target")
    p = cmd(g, "linking", cmd_sigma_linking)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", required=True)

    g = group("floer")
    p = cmd(g, "nu", cmd_floer_nu)
    p.add_argument("--knot", required=True)
    p.add_argument("--catalog")
    p = cmd(g, "trace-trivial", cmd_floer_trace)
    p.add_argument("--knot")
    p.add_argument("--catalog")
    p.add_argument("--nu", type=int)
    p.add_argument("--shape", choices=["V", "W"])
    p.add_argument("--n", type=int, required=True)
    p = cmd(g, "thm-nu", cmd_floer_thm)
    p.add_argument("--matrix", required=True)
    p.add_argument("--components", required=True)

    g = group("twobridge")
    for name, fn in (("cf", cmd_tb_cf), ("alexander", cmd_tb_alexander), ("report", cmd_tb_report)):
        p = cmd(g, name, fn)
        p.add_argument("--fraction", required=True)
        if name == "report":
            p.add_argument("--dmax", type=int, default=6)

    g = group("pipeline")
    p = cmd(g, "branched-cover", cmd_pipeline)
    p.add_argument("--braid", required=True)
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--framing", type=int, default=1)
    p.add_argument("--component-class", help="knot class for every component, e.g. Torus2(5)")
    return ap


_NEG_LIST = re.compile(r"^-\d[\d,\s-]*$")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--braid -2,1`` into ``--braid=-2,1`` so argparse does not read the value as a flag."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEG_LIST.match(tok) and "," in tok:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def _emit(obj: dict, pretty: bool, stream) -> None:
    stream.write(json.dumps(obj, indent=2 if pretty else None) + "\n")


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    out = stdout or sys.stdout
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    pretty = "--pretty" in argv
    try:
        args = build_parser().parse_args(argv)
        command = f"{args.group} {args.action}"
        inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("fn", "group", "action", "pretty", "json")}
        res = args.fn(args)
    except (InputError, ValueError, KeyError, ArithmeticError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc), "argv": argv}, pretty, out)
        return 2
    _emit(
        {
            "command": command,
            "inputs": inputs,
            "result": res.result,
            "provenance": res.provenance,
            "warnings": res.warnings,
        },
        pretty,
        out,
    )
    return 0 if res.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
