"""Command-line front end.

Reports go to stdout as JSON (or a plain table with ``--format table``),
diagnostics to stderr.  Exit status: 0 pass, 1 checked and false,
2 input or usage error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .characteristic import face_group, local_group, validate_characteristic
from .gkm import (
    FaceCongruenceError,
    MissingFace,
    NotInGamma,
    build_gkm_graph,
    check_piecewise,
    check_section,
    coprimality_check,
    default_graph,
    piecewise_from_section,
    section_from_piecewise,
)
from .io import (
    DocumentError,
    dumps,
    load_pair,
    piecewise_from_doc,
    piecewise_to_doc,
    read_json,
    section_from_doc,
    sequence_from_doc,
    sequence_to_doc,
)
from .retraction import (
    BUDGET_ENV,
    SearchBudgetExceeded,
    cell_counts,
    certificate_groups,
    check_certificate,
    default_budget,
    enumerate_retractions,
    find_divisive_sequence,
)
from .zlinalg import determinant

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _group_doc(G) -> Dict[str, Any]:
    return {"invariant_factors": list(G.invariant_factors), "order": G.order}


def _require_valid(pair) -> None:
    rep = validate_characteristic(pair)
    if not rep.ok:
        raise UsageError("input is not a characteristic pair; run `validate` for details")


def _table(headers: Sequence[str], rows: List[Sequence[Any]]) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


# -- subcommands --------------------------------------------------------------


def cmd_validate(args, pair):
    P = pair.polytope
    rep = validate_characteristic(pair)
    report = {
        "command": "validate",
        "valid": rep.ok,
        "non_primitive": [P.facet_names[i] for i in rep.non_primitive],
        "singular_vertices": [P.vertex_names[v] for v, _ in rep.singular_vertices],
        "vertex_determinants": {
            P.vertex_names[v]: abs(determinant(pair.vertex_matrix(v))) for v in range(P.vertex_count)
        },
    }
    table = _table(["vertex", "|det|"], sorted(report["vertex_determinants"].items()))
    return report, table, EXIT_OK if rep.ok else EXIT_FALSE


def cmd_local_groups(args, pair):
    _require_valid(pair)
    P = pair.polytope
    faces = [P.face_by_name(args.face)] if args.face else list(P.faces)
    rows = []
    for F in faces:
        for v in sorted(F.vertex_set):
            G = local_group(pair, F, v)
            rows.append({"face": P.face_name(F), "vertex": P.vertex_names[v], **_group_doc(G)})
    fg = {P.face_name(F): _group_doc(face_group(pair, F)) for F in faces if F != P.whole}
    report = {"command": "local-groups", "local_groups": rows, "face_groups": fg}
    table = _table(
        ["face", "vertex", "order", "factors"],
        [(r["face"], r["vertex"], r["order"], r["invariant_factors"] or "-") for r in rows],
    )
    return report, table, EXIT_OK


def cmd_retract(args, pair):
    P = pair.polytope
    cap = args.cap if args.all else 1
    seqs = enumerate_retractions(P, cap=cap, budget=args.budget)
    h = P.h_vector()
    docs = [{"steps": sequence_to_doc(s), "cell_counts": cell_counts(s)} for s in seqs]
    report = {
        "command": "retract",
        "count": len(seqs),
        "truncated": bool(cap) and len(seqs) >= cap,
        "h_vector": h,
        "sequences": docs,
    }
    rows = [(i + 1, " ".join(f"{st['vertex']}:{st['face']}" for st in d["steps"])) for i, d in enumerate(docs)]
    return report, _table(["#", "steps (vertex:face)"], rows), EXIT_OK


def _certificate_doc(pair, seq) -> Dict[str, Any]:
    steps = sequence_to_doc(seq)
    for st, G in zip(steps, certificate_groups(pair, seq)):
        st["local_group"] = _group_doc(G)
    return {"steps": steps, "cell_counts": cell_counts(seq)}


def cmd_divisive(args, pair):
    _require_valid(pair)
    res = find_divisive_sequence(pair, args.budget)
    report = {
        "command": "divisive",
        "status": res.status,
        "nodes": res.nodes,
        "reason": res.reason,
        "certificate": _certificate_doc(pair, res.certificate) if res.certificate else None,
    }
    if res.certificate is not None:
        code = EXIT_OK
        rows = [
            (st["step"], st["vertex"], st["face"], st["dim"], st["local_group"]["order"])
            for st in report["certificate"]["steps"]
        ]
        table = _table(["step", "vertex", "face", "dim", "|G|"], rows)
    else:
        code = EXIT_FALSE if res.decided else EXIT_BUDGET
        table = f"{res.status}: {res.reason}\n"
        if not res.decided:
            print(f"search budget exhausted; raise --budget or {BUDGET_ENV}", file=sys.stderr)
    return report, table, code


def _sequence_for(args, pair):
    if args.seq_from:
        return sequence_from_doc(pair, read_json(args.seq_from), args.seq_from)
    res = find_divisive_sequence(pair, args.budget)
    if res.certificate is not None:
        return res.certificate
    return enumerate_retractions(pair.polytope, cap=1)[0]


def cmd_gkm(args, pair):
    _require_valid(pair)
    P = pair.polytope
    seq = _sequence_for(args, pair)
    graph = build_gkm_graph(pair, seq)
    cop = coprimality_check(graph)
    h = P.h_vector()
    cells = cell_counts(seq)
    vertices = []
    for i, v in enumerate(graph.order):
        vertices.append({
            "position": i + 1,
            "vertex": P.vertex_names[v],
            "face": P.face_name(seq.faces[i]),
            "in_neighbors": [P.vertex_names[graph.order[k]] for k in graph.in_neighbors[i]],
        })
    edges = [
        {"edge": e.name, "ends": [P.vertex_names[e.a], P.vertex_names[e.b]], "character": list(e.u)}
        for e in graph.edges
    ]
    witness = None
    if not cop.ok:
        v, e1, e2 = cop.witness
        witness = {"vertex": P.vertex_names[v], "edges": [e1.name, e2.name]}
    report = {
        "command": "gkm",
        "sequence_divisive": check_certificate(pair, seq),
        "vertices": vertices,
        "edges": edges,
        "coprimality": {"ok": cop.ok, "witness": witness},
        "cell_counts": cells,
        "h_vector": h,
        "cells_match_h_vector": cells == h,
    }
    table = _table(["edge", "ends", "character"], [(e["edge"], "-".join(e["ends"]), e["character"]) for e in edges])
    table += f"coprimality: {'ok' if cop.ok else 'FAILED'}; cells {cells} vs h {h}\n"
    return report, table, EXIT_OK if cop.ok and cells == h else EXIT_FALSE


def cmd_check_section(args, pair):
    _require_valid(pair)
    P = pair.polytope
    s = section_from_doc(pair, read_json(args.section), args.section, args.theory)
    verdict = check_section(default_graph(pair), s)
    edges = [
        {"edge": e.name, "ends": [P.vertex_names[e.a], P.vertex_names[e.b]], "character": list(e.u), "divisible": ok}
        for e, ok in verdict.per_edge
    ]
    report = {
        "command": "check-section",
        "theory": s.theory,
        "in_gamma": verdict.ok,
        "failing_edge": verdict.failing_edge.name if verdict.failing_edge else None,
        "edges": edges,
    }
    table = _table(["edge", "ends", "divisible"], [(e["edge"], "-".join(e["ends"]), e["divisible"]) for e in edges])
    return report, table, EXIT_OK if verdict.ok else EXIT_FALSE


def cmd_check_piecewise(args, pair):
    _require_valid(pair)
    P = pair.polytope
    p = piecewise_from_doc(pair, read_json(args.element), args.element, args.theory)
    verdict = check_piecewise(pair, p)
    witness = None
    if verdict.witness:
        F, G = verdict.witness
        witness = {"face": P.face_name(F), "in": P.face_name(G)}
    report = {"command": "check-piecewise", "theory": p.theory, "valid": verdict.ok, "witness": witness}
    table = f"{'valid' if verdict.ok else 'INVALID'}" + (f": {witness['face']} vs {witness['in']}" if witness else "") + "\n"
    return report, table, EXIT_OK if verdict.ok else EXIT_FALSE


def cmd_equiv_roundtrip(args, pair):
    _require_valid(pair)
    P = pair.polytope
    s = section_from_doc(pair, read_json(args.section), args.section, args.theory)
    in_gamma = check_section(default_graph(pair), s).ok
    face_level, witness, piecewise_ok, roundtrip, element = False, None, False, False, None
    try:
        p = piecewise_from_section(pair, s, precheck=False)
        face_level = True
        piecewise_ok = check_piecewise(pair, p).ok
        roundtrip = section_from_piecewise(p) == s
        element = piecewise_to_doc(pair, p)
    except FaceCongruenceError as exc:
        witness = {"face": P.face_name(exc.face), "vertices": [P.vertex_names[v] for v in exc.vertices]}
    consistent = in_gamma == (face_level and piecewise_ok)
    report = {
        "command": "equiv-roundtrip",
        "theory": s.theory,
        "in_gamma": in_gamma,
        "face_congruences": face_level,
        "face_witness": witness,
        "piecewise_valid": piecewise_ok,
        "roundtrip_identity": roundtrip,
        "consistent": consistent,
        "piecewise": element,
    }
    if not consistent:
        print("vertex and face presentations disagree", file=sys.stderr)
    table = "".join(f"{k}: {report[k]}\n" for k in ("in_gamma", "face_congruences", "piecewise_valid", "roundtrip_identity", "consistent"))
    ok = in_gamma and consistent and roundtrip
    return report, table, EXIT_OK if ok else EXIT_FALSE


# -- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricgkm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("input", help="characteristic pair document (JSON)")
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the characteristic function")
    p = add("local-groups", cmd_local_groups, "local groups G_F(v)")
    p.add_argument("--face", help="restrict to one face, e.g. F2∩F4 or F2&F4")
    p = add("retract", cmd_retract, "retraction sequences")
    p.add_argument("--all", action="store_true", help="enumerate all sequences")
    p.add_argument("--cap", type=int, default=0, help="stop after N sequences (0 = no cap)")
    p.add_argument("--budget", type=int, default=0, help="maximum search steps (0 = unbounded)")
    p = add("divisive", cmd_divisive, "search for a divisive retraction")
    p.add_argument("--budget", type=int, default=None, help=f"search node budget (default ${BUDGET_ENV} or 10^6)")
    p = add("gkm", cmd_gkm, "GKM graph, coprimality and cell counts")
    p.add_argument("--seq-from", help="retraction sequence document to orient the graph")
    p.add_argument("--budget", type=int, default=None)
    for name, func, flag, help in (
        ("check-section", cmd_check_section, "--section", "test a vertex section"),
        ("check-piecewise", cmd_check_piecewise, "--element", "test a piecewise element"),
        ("equiv-roundtrip", cmd_equiv_roundtrip, "--section", "compare vertex and face presentations"),
    ):
        p = add(name, func, help)
        p.add_argument("--theory", choices=("K", "H"), help="override the document's theory")
        p.add_argument(flag, required=True, dest=flag.lstrip("-"))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", 0) is None:
        try:
            args.budget = default_budget()
        except ValueError:
            print(f"error: {BUDGET_ENV} must be an integer", file=sys.stderr)
            return EXIT_INPUT
    try:
        pair = load_pair(args.input)
        report, table, code = args.func(args, pair)
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DocumentError, UsageError, NotInGamma, MissingFace, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(dumps(report) if args.format == "json" else table)
    return code


if __name__ == "__main__":
    sys.exit(main())
