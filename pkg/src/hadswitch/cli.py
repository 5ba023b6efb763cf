"""Command-line interface.

Exit codes: 0 verdict true / pass, 1 verdict false / fail, 2 usage or parse
error, 3 inconclusive (canonical labeling budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .gmswitch import gm_switch, hall_partition, quadruple_partition, validate_partition
from .hadgraph import equivalence_verdict, hadamard_graph
from .hadswitch import (
    classify_hall_columns,
    find_closed_quadruples,
    find_hall_sets,
    hall_standard_form,
    switch_closed_quadruple,
    switch_hall_set,
)
from .io import FORMATS, emit_graph, emit_matrix, parse_graph, parse_matrices, parse_matrix
from .loopgraph import DEFAULT_BUDGET, InconclusiveError, char_poly
from .signmatrix import is_hadamard

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
GLOBAL_DEFAULTS = {"format": "plusminus", "budget": DEFAULT_BUDGET, "json": False}


class UsageError(Exception):
    pass


def _read_text(arg: str) -> str | None:
    path = Path(arg)
    if path.is_file():
        return path.read_text()
    if arg == "-":
        return sys.stdin.read()
    return None


def load_matrix(arg: str, fmt: str):
    """A file path (or '-' for stdin) in ``fmt``, or the name of a bundled fixture."""
    text = _read_text(arg)
    if text is not None:
        return parse_matrix(text, fmt)
    try:
        return fixtures.load(arg)
    except KeyError:
        raise UsageError(f"{arg}: no such file or fixture") from None


def load_graph(arg: str, fmt: str):
    text = _read_text(arg)
    if text is not None and text.lstrip().startswith("vertices"):
        return parse_graph(text)
    return hadamard_graph(load_matrix(arg, fmt))


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": 1, "command": args.command, **payload}, indent=2))
    else:
        sys.stdout.write(text if text.endswith("\n") or not text else text + "\n")


def _one_based(xs) -> list[int]:
    return [int(x) + 1 for x in xs]


def cmd_verify(args) -> int:
    text = _read_text(args.file)
    mats = parse_matrices(text, args.format) if text is not None else [load_matrix(args.file, args.format)]
    if not mats:
        raise UsageError(f"{args.file}: no matrix found")
    verdicts = [is_hadamard(M) for M in mats]
    lines = [f"{k}\t{M.n_rows}x{M.n_cols}\t{'hadamard' if ok else 'not hadamard'}" for k, (M, ok) in enumerate(zip(mats, verdicts))]
    payload = {"matrices": [{"index": k, "shape": list(M.shape), "hadamard": ok} for k, (M, ok) in enumerate(zip(mats, verdicts))]}
    _emit(args, payload, "\n".join(lines))
    return EXIT_TRUE if all(verdicts) else EXIT_FALSE


def _require(M):
    if not is_hadamard(M):
        raise UsageError("input is not a Hadamard matrix")


def cmd_find(args) -> int:
    M = load_matrix(args.file, args.format)
    _require(M)
    if args.kind == "quadruples":
        found = find_closed_quadruples(M)
        rows = [
            {"index": k, "rows": _one_based(q.rows), "sign": q.sign, "fields": [_one_based(f) for f in q.fields.fields]}
            for k, q in enumerate(found)
        ]
        lines = ["index\trows\tsign\tfields"] + [
            f"{r['index']}\t{','.join(map(str, r['rows']))}\t{'+' if r['sign'] > 0 else '-'}\t"
            + " ".join("{" + ",".join(map(str, f)) + "}" for f in r["fields"])
            for r in rows
        ]
    else:
        found = find_hall_sets(M)
        rows = [
            {
                "index": k,
                "rows": _one_based(sorted(h.rows)),
                "hall_columns": _one_based(h.hall_cols),
                "hall_columns_form": classify_hall_columns(M, h).value,
            }
            for k, h in enumerate(found)
        ]
        lines = ["index\trows\thall_columns\thall_columns_form"] + [
            f"{r['index']}\t{','.join(map(str, r['rows']))}\t{','.join(map(str, r['hall_columns']))}\t{r['hall_columns_form']}"
            for r in rows
        ]
    _emit(args, {"kind": args.kind, "found": rows}, "\n".join(lines))
    return EXIT_TRUE if found else EXIT_FALSE


def _pick(items, index: int, what: str):
    if not items:
        raise UsageError(f"matrix has no {what}")
    if not 0 <= index < len(items):
        raise UsageError(f"--index must be in 0..{len(items) - 1}")
    return items[index]


def _switch(args, M):
    """Switched matrix and the GM partition for the chosen structure."""
    _require(M)
    if args.kind == "quadruple":
        q = _pick(find_closed_quadruples(M), args.index, "closed quadruple")
        return switch_closed_quadruple(M, q, args.field), quadruple_partition(M, q, args.field)
    h = _pick(find_hall_sets(M), args.index, "Hall set")
    if M.order % 8 != 4:
        raise UsageError("Hall-set switching needs n = 4 (mod 8)")
    form = hall_standard_form(M, h)
    return switch_hall_set(M, h, args.field, form), hall_partition(M, h, args.field, form)


def cmd_switch(args) -> int:
    M = load_matrix(args.file, args.format)
    S, _ = _switch(args, M)
    text = emit_matrix(S, args.format)
    _emit(args, {"kind": args.kind, "index": args.index, "field": args.field, "matrix": S.to_lists(), "hadamard": is_hadamard(S)}, text)
    return EXIT_TRUE if is_hadamard(S) else EXIT_FALSE


def cmd_graph(args) -> int:
    G = hadamard_graph(load_matrix(args.file, args.format))
    payload = {"vertices": G.n, "loops": [int(x) for x in G.loops], "neighbors": [G.neighbors(v) for v in range(G.n)]}
    _emit(args, payload, emit_graph(G))
    return EXIT_TRUE


def cmd_equiv(args) -> int:
    A = load_matrix(args.a, args.format)
    B = load_matrix(args.b, args.format)
    _require(A)
    _require(B)
    v = equivalence_verdict(A, B, args.budget)
    word = "equivalent" if v.equivalent else "inequivalent"
    _emit(args, {"equivalent": v.equivalent, "decided_by": v.decided_by}, f"{word} (decided by {v.decided_by})")
    return EXIT_TRUE if v.equivalent else EXIT_FALSE


def cmd_cospectral(args) -> int:
    G1 = load_graph(args.a, args.format)
    G2 = load_graph(args.b, args.format)
    p1, p2 = char_poly(G1), char_poly(G2)
    same = G1.n == G2.n and p1 == p2
    text = f"{'cospectral' if same else 'not cospectral'}\n{p1}\n{p2}"
    _emit(args, {"cospectral": same, "char_polys": [list(p1.coeffs), list(p2.coeffs)]}, text)
    return EXIT_TRUE if same else EXIT_FALSE


def cmd_commute(args) -> int:
    M = load_matrix(args.file, args.format)
    S, P = _switch(args, M)
    G = hadamard_graph(M)
    report = validate_partition(G, P)
    via_matrix = hadamard_graph(S)
    lines = [f"partition: {len(P.cells) + 1} sets, |D|={len(P.rest)}, valid={report.ok}"]
    if not report.ok:
        lines += [f"  violation ({v.condition}): {v.detail}" for v in report.violations]
        _emit(args, {"partition_valid": False, "identical": False}, "\n".join(lines))
        return EXIT_FALSE
    via_graph = gm_switch(G, P)
    diff = int((via_graph.adjacency != via_matrix.adjacency).sum()) // 2
    lines.append("graphs identical" if diff == 0 else f"graphs differ in {diff} adjacency pairs")
    _emit(args, {"partition_valid": True, "identical": diff == 0, "differing_pairs": diff}, "\n".join(lines))
    return EXIT_TRUE if diff == 0 else EXIT_FALSE


def cmd_reproduce(args) -> int:
    from .report import FAIL, INCONCLUSIVE, run_all

    only = set(args.only.split(",")) if args.only else None
    rep = run_all(
        budget=args.budget,
        figures=args.figures,
        extended=args.extended,
        sloane_dir=args.sloane_dir,
        only=only,
    )
    timings = not args.no_timings
    if args.json:
        print(rep.to_json(timings))
    else:
        sys.stdout.write(rep.to_table(timings))
        for path in rep.figures:
            print(f"figure\t{path}")
    return {FAIL: EXIT_FALSE, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(rep.status, EXIT_TRUE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="matrix text format")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="canonical labeling step budget")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output (schema 1)")

    parser = argparse.ArgumentParser(prog="hadswitch", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check HH^T = nI for every matrix in a file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("find", parents=[common], help="list closed quadruples or Hall sets")
    p.add_argument("kind", choices=("quadruples", "hallsets"))
    p.add_argument("file")
    p.set_defaults(func=cmd_find)

    for name, func, helptext in (
        ("switch", cmd_switch, "switch a closed quadruple or Hall set and print the result"),
        ("commute", cmd_commute, "compare GM switching of the graph with the graph of the switched matrix"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("kind", choices=("quadruple", "hallset"))
        p.add_argument("file")
        p.add_argument("--index", type=int, default=0, help="position in the 'find' listing (0-based)")
        p.add_argument("--field", type=int, default=1, choices=(1, 2, 3, 4), help="field or block to switch")
        p.set_defaults(func=func)

    p = sub.add_parser("graph", parents=[common], help="print the Hadamard graph as adjacency lists")
    p.add_argument("file")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("equiv", parents=[common], help="decide equivalence of two Hadamard matrices")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("cospectral", parents=[common], help="compare characteristic polynomials of two graphs")
    p.add_argument("a", help="graph file, matrix file or fixture (matrices use their Hadamard graph)")
    p.add_argument("b")
    p.set_defaults(func=cmd_cospectral)

    p = sub.add_parser("reproduce", parents=[common], help="run the acceptance checks and print a pass/fail table")
    p.add_argument("--figures", type=Path, help="write figures (PNG) into this directory")
    p.add_argument("--extended", action="store_true", help="add the optional order-24 run")
    p.add_argument("--sloane-dir", type=Path, help="directory of order-24 matrices in plusminus format")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--no-timings", action="store_true", help="omit timing columns (byte-stable output)")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # parent actions are shared between parsers, so defaults are filled in here
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"hadswitch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconclusiveError as exc:
        print(f"hadswitch: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
