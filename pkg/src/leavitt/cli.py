"""Command-line front end.

Exit codes: 0 ok, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraError, LeavittPathAlgebra
from .dualgraph import compare_invariants, dual
from .expr import ExprSyntaxError
from .field import parse_field
from .local_global import (
    acyclicity_transfer_check,
    build_b,
    build_ef,
    lift_cycle,
    membership,
    verify_decomposition,
    verify_theta_homomorphism,
)
from .quiver import (
    GraphError,
    cofinality_witness,
    has_no_exits,
    is_acyclic,
    parse_graph,
    simple_cycles,
    sinks,
    sources,
)
from .report import Report
from .structure import bezout_lemma_harness, matricial_shape, structure_summary

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_graph(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _edges_arg(text: str) -> list[str]:
    return [e.strip() for e in text.split(",") if e.strip()]


def _read_exprs(path: str) -> list[str]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return [ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("#")]


def analysis_report(g, field) -> dict:
    A = LeavittPathAlgebra(g, field)
    acyclic = is_acyclic(g)
    no_exit = has_no_exits(g)
    cof = cofinality_witness(g)
    ck = Report()
    bad = A.check_ck_relations()
    ck.add("ck_relations_reduce_to_zero", not bad, bad[0][0] if bad else None)
    return {
        "graph": {
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "sinks": sinks(g),
            "sources": sources(g),
        },
        "properties": {
            "acyclic": acyclic,
            "cofinal": cof is None,
            "no_exit": no_exit,
            "directly_finite": no_exit,
            "von_neumann_regular": acyclic,
        },
        "cofinality_witness": None if cof is None else {"vertex": cof[0], "misses": cof[1]},
        "dimension": A.dimension(),
        "shape": matricial_shape(g).to_json() if no_exit else None,
        "checks": ck.to_json(),
    }


def cmd_analyze(args) -> int:
    g = _load_graph(args.graph)
    rep = analysis_report(g, args.field)
    if args.json:
        _emit(rep)
    else:
        gi, props = rep["graph"], rep["properties"]
        print(f"vertices: {gi['vertices']}  edges: {gi['edges']}")
        print(f"sinks: {' '.join(gi['sinks']) or '-'}")
        print(f"sources: {' '.join(gi['sources']) or '-'}")
        for k, v in props.items():
            print(f"{k}: {str(v).lower()}")
        if rep["cofinality_witness"]:
            w = rep["cofinality_witness"]
            print(f"not cofinal: {w['vertex']} misses {w['misses']}")
        print(f"dimension: {rep['dimension'] if rep['dimension'] is not None else 'infinite'}")
        if rep["shape"] is not None:
            print(f"k_blocks: {rep['shape']['k_blocks']}  laurent_blocks: {rep['shape']['laurent_blocks']}")
        for c in rep["checks"]:
            print(f"{c['status'].upper()}  {c['check_name']}")
    return EXIT_OK if all(c["status"] == "pass" for c in rep["checks"]) else EXIT_FAIL


def _theta_report(g, F, field) -> Report:
    ef = build_ef(g, F)
    rep = Report()
    rep.extend(verify_theta_homomorphism(ef, field))
    rep.extend(acyclicity_transfer_check(g, F))
    for c in simple_cycles(ef.graph):
        lifted, ok = lift_cycle(ef, c)
        rep.add(f"lift {c}", ok, f"-> {lifted}")
    return rep


def cmd_ef(args) -> int:
    g = _load_graph(args.graph)
    F = _edges_arg(args.edges)
    try:
        ef = build_ef(g, F)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    if not args.verify:
        if args.json:
            _emit({"ef": ef.graph.to_json(), "kinds": dict(ef.kinds)})
        else:
            sys.stdout.write(ef.graph.to_text())
        return EXIT_OK
    rep = _theta_report(g, F, args.field)
    if args.json:
        _emit({"ef": ef.graph.to_json(), "kinds": dict(ef.kinds), "report": rep.to_json()})
    else:
        sys.stdout.write(ef.graph.to_text())
        print(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_theta_check(args) -> int:
    g = _load_graph(args.graph)
    F = _edges_arg(args.edges) if args.edges is not None else [e.id for e in g.edges]
    try:
        rep = _theta_report(g, F, args.field)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        _emit(rep.to_json())
    else:
        print(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_reduce(args) -> int:
    g = _load_graph(args.graph)
    A = LeavittPathAlgebra(g, args.field)
    x = A.parse(args.expr)
    if args.json:
        _emit(x.to_json())
    else:
        print(x)
    return EXIT_OK


def cmd_subalg(args) -> int:
    g = _load_graph(args.graph)
    A = LeavittPathAlgebra(g, args.field)
    elements = [A.parse(t) for t in _read_exprs(args.exprs)]
    if not elements:
        raise InputError("no expressions given")
    for t, a in zip(_read_exprs(args.exprs), elements):
        if not a:
            raise InputError(f"zero element: {t!r}")
    b = build_b(elements)
    bound = args.bound if args.bound is not None else b.default_bound()
    rep = verify_decomposition(b, bound)
    for a in elements:
        rep.add(f"membership {a}", membership(b, a, bound) is not None, f"bound {bound}")
    summary = b.summary()
    if args.json:
        summary["bound"] = bound
        summary["report"] = rep.to_json()
        _emit(summary)
    else:
        p = summary["partition"]
        for k in ("F", "S", "S1", "S2", "S3", "S4"):
            print(f"{k}: {' '.join(p[k]) or '-'}")
        print("E_F:")
        sys.stdout.write("".join("  " + ln + "\n" for ln in b.ef.graph.to_text().splitlines()))
        print("theta:")
        for k, v in summary["theta_vertex_images"].items():
            print(f"  {k} -> {v}")
        for k, v in summary["theta_edge_images"].items():
            print(f"  {k} -> {v}")
        for k, v in summary["s4_idempotents"].items():
            print(f"u_{k} = {v}")
        print(f"bound: {bound}")
        print(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_dual(args) -> int:
    g = _load_graph(args.graph)
    d = dual(g)
    rep = compare_invariants(g)
    if args.json:
        _emit({"dual": d.to_json(), "report": rep.to_json()})
    else:
        sys.stdout.write(d.to_text())
        print(json.dumps(rep.to_json(), indent=2))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_structure(args) -> int:
    g = _load_graph(args.graph)
    out = structure_summary(g)
    code = EXIT_OK
    if args.bezout:
        A = LeavittPathAlgebra(g, args.field)
        gens = [A.parse(t) for t in _read_exprs(args.bezout)]
        if not is_acyclic(g):
            raise InputError("the Bezout harness needs an acyclic graph")
        rep, x = bezout_lemma_harness(A, gens, seed=args.seed)
        out["bezout"] = {"generator": str(x), "report": rep.to_json()}
        code = EXIT_OK if rep.ok else EXIT_FAIL
    _emit(out)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="rational", help="rational (default) or fp:<p>")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--bound", type=int, default=None, help="degree bound (default: automatic)")

    parser = argparse.ArgumentParser(prog="leavitt", description="Leavitt path algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="graph and ring properties")
    p.add_argument("graph")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("ef", parents=[common], help="build E_F")
    p.add_argument("graph")
    p.add_argument("--edges", required=True, help="comma-separated edge ids forming F")
    p.add_argument("--verify", action="store_true", help="also verify theta")
    p.set_defaults(func=cmd_ef)

    p = sub.add_parser("theta-check", parents=[common], help="verify theta: L(E_F) -> L(E)")
    p.add_argument("graph")
    p.add_argument("--edges", default=None, help="comma-separated F (default: all edges)")
    p.set_defaults(func=cmd_theta_check)

    p = sub.add_parser("reduce", parents=[common], help="normal form of an expression")
    p.add_argument("graph")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("subalg", parents=[common], help="subalgebra B(a_1..a_l)")
    p.add_argument("graph")
    p.add_argument("--exprs", required=True, help="file with one expression per line")
    p.set_defaults(func=cmd_subalg)

    p = sub.add_parser("dual", parents=[common], help="dual graph d(E) and invariant comparison")
    p.add_argument("graph")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("structure", parents=[common], help="structure summary")
    p.add_argument("graph")
    p.add_argument("--bezout", default=None, help="file of generators for the Bezout harness")
    p.set_defaults(func=cmd_structure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.field = parse_field(args.field)
        return args.func(args)
    except (InputError, GraphError, AlgebraError, ExprSyntaxError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
