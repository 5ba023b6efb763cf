"""Reproduction harness behind ``hadswitch reproduce``.

Each check returns a status (PASS, FAIL, INCONCLUSIVE or SKIPPED) and a short
detail string; ``run_all`` times them against their limits and gathers a
report that renders as a delimited table or as JSON.
"""

from __future__ import annotations

import csv
import io
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable

from . import fixtures
from .gmswitch import gm_switch, hall_partition, quadruple_partition, validate_partition
from .hadgraph import equivalence_verdict, hadamard_graph
from .hadswitch import (
    HallColumns,
    classify_hall_columns,
    find_closed_quadruples,
    find_hall_sets,
    hall_standard_form,
    switch_closed_quadruple,
    switch_hall_set,
)
from .invariants import profile4, smith_normal_form
from .loopgraph import DEFAULT_BUDGET, InconclusiveError, char_poly
from .signmatrix import field_sums, field_structure, find_3normalized_triples, is_hadamard

SCHEMA = 1
PASS, FAIL, INCONCLUSIVE, SKIPPED = "PASS", "FAIL", "INCONCLUSIVE", "SKIPPED"
EXTENDED_BUDGET = 10**9
H36_HALL_ROWS = (0, 3, 18, 21)


@dataclass
class CriterionResult:
    key: str
    title: str
    status: str
    detail: str
    seconds: float
    limit: float | None


@dataclass
class RunReport:
    command: str
    results: list[CriterionResult] = field(default_factory=list)
    figures: list[str] = field(default_factory=list)
    schema: int = SCHEMA

    @property
    def status(self) -> str:
        states = {r.status for r in self.results}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    def to_json(self, timings: bool = True) -> str:
        data = asdict(self)
        data["status"] = self.status
        if not timings:
            for r in data["results"]:
                r.pop("seconds")
        return json.dumps(data, indent=2)

    def to_table(self, timings: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, delimiter="|", lineterminator="\n")
        head = ["criterion", "status"] + (["seconds"] if timings else []) + ["limit", "title", "detail"]
        w.writerow(head)
        for r in self.results:
            row = [r.key, r.status] + ([f"{r.seconds:.2f}"] if timings else [])
            w.writerow(row + ["" if r.limit is None else f"{r.limit:g}", r.title, r.detail])
        return buf.getvalue()


class _Context:
    """Shares switched graphs between the commutation and cospectrality checks."""

    def __init__(self, budget: int):
        self.budget = budget
        self.switched: dict[str, list] = {}


def render_figures(directory) -> list[str]:
    """Heatmaps of the three showcase switches and the switched H16.0 subgraph."""
    from .plotting import switch_heatmaps, switched_subgraph

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []

    H, h = _h12_hall_set()
    paths.append(switch_heatmaps(H, switch_hall_set(H, h, 1), out / "h12_hall_switch.png",
                                 "H12, Hall set on rows 1-4, block 1"))  # fmt: skip

    H = fixtures.load("H16.0")
    q = next(q for q in find_closed_quadruples(H) if q.rows == (0, 1, 2, 3))
    paths.append(switch_heatmaps(H, switch_closed_quadruple(H, q, 1), out / "h16_0_quadruple_switch.png",
                                 "H16.0, quadruple rows 1-4, field 1"))  # fmt: skip
    P = quadruple_partition(H, q, 1)
    G = hadamard_graph(H)
    paths.append(switched_subgraph(G, gm_switch(G, P), P.rest + P.cells[0], out / "h16_0_quadruple_subgraph.png",
                                   "H16.0: D and C_1 before and after GM switching"))  # fmt: skip

    H = fixtures.load("H36")
    h = next(h for h in find_hall_sets(H) if sorted(h.rows) == list(H36_HALL_ROWS))
    paths.append(switch_heatmaps(H, switch_hall_set(H, h, 1), out / "h36_hall_switch.png",
                                 "H36, Hall set on rows 1,4,19,22, block 1"))  # fmt: skip
    return [str(p) for p in paths]


def check_corpus(ctx: _Context):
    bad = [n for n, M in fixtures.all_fixtures().items() if not is_hadamard(M)]
    if bad:
        return FAIL, f"not Hadamard: {', '.join(bad)}"
    return PASS, f"{len(fixtures.NAMES)} fixtures satisfy HH^T = nI"


def _h12_hall_set():
    H = fixtures.load("H12")
    return H, next(h for h in find_hall_sets(H) if sorted(h.rows) == [0, 1, 2, 3])


def check_eq8(ctx: _Context):
    H, h = _h12_hall_set()
    S = switch_hall_set(H, h, 1)
    target = fixtures.load("H12-switched")
    diff = int((S.array != target.array).sum())
    return (PASS, "entrywise equal") if diff == 0 else (FAIL, f"{diff} entries differ")


def check_h12_equivalent(ctx: _Context):
    v = equivalence_verdict(fixtures.load("H12"), fixtures.load("H12-switched"), ctx.budget)
    ok = v.equivalent and v.decided_by == "canonical_form"
    return (PASS if ok else FAIL), f"equivalent={v.equivalent} decided_by={v.decided_by}"


def check_quadruple_commutation(ctx: _Context):
    total = bad = 0
    graphs = []
    for name in fixtures.ORDER16:
        H = fixtures.load(name)
        G = hadamard_graph(H)
        for q in find_closed_quadruples(H):
            for f in range(1, 5):
                P = quadruple_partition(H, q, f)
                total += 1
                switched = gm_switch(G, P) if validate_partition(G, P).ok else None
                if switched is None or switched != hadamard_graph(switch_closed_quadruple(H, q, f)):
                    bad += 1
                else:
                    graphs.append((name, G, switched))
    ctx.switched["quadruple"] = graphs
    return (PASS if bad == 0 else FAIL), f"{total - bad}/{total} (fixture, quadruple, field) cases identical"


def check_hall_commutation(ctx: _Context):
    total = bad = 0
    graphs = []
    found_h36 = False
    for name in ("H12", "H36"):
        H = fixtures.load(name)
        G = hadamard_graph(H)
        for h in find_hall_sets(H):
            found_h36 |= name == "H36" and sorted(h.rows) == list(H36_HALL_ROWS)
            form = hall_standard_form(H, h)
            for i in range(1, 5):
                P = hall_partition(H, h, i, form)
                total += 1
                switched = gm_switch(G, P) if validate_partition(G, P).ok else None
                if switched is None or switched != hadamard_graph(switch_hall_set(H, h, i, form)):
                    bad += 1
                else:
                    graphs.append((name, G, switched))
    ctx.switched["hall"] = graphs
    ok = bad == 0 and found_h36
    return (PASS if ok else FAIL), f"{total - bad}/{total} (fixture, Hall set, block) cases identical; H36 rows 1,4,19,22 found={found_h36}"


def check_cospectral(ctx: _Context):
    graphs = ctx.switched.get("quadruple", []) + ctx.switched.get("hall", [])
    if not graphs:
        return FAIL, "no switched graphs (criteria 4-5 did not run)"
    originals = {}
    seen = {}
    bad = 0
    for name, G, S in graphs:
        if name not in originals:
            originals[name] = char_poly(G)
        if S not in seen:
            seen[S] = char_poly(S) == originals[name]
        bad += not seen[S]
    return (PASS if bad == 0 else FAIL), f"{len(graphs) - bad}/{len(graphs)} switched graphs cospectral ({len(seen)} distinct)"


def check_order16_inequivalent(ctx: _Context):
    levels = Counter()
    equivalent = 0
    for name in fixtures.ORDER16:
        H = fixtures.load(name)
        for q in find_closed_quadruples(H):
            for f in range(1, 5):
                v = equivalence_verdict(H, switch_closed_quadruple(H, q, f), ctx.budget)
                levels[v.decided_by] += 1
                equivalent += v.equivalent
    summary = " ".join(f"{k}={levels[k]}" for k in sorted(levels))
    flag = "SNF alone sufficed" if set(levels) == {"snf"} else "SNF did not always decide"
    return (PASS if equivalent == 0 else FAIL), f"{equivalent} equivalent; decided by {summary}; {flag}"


def check_classes(ctx: _Context):
    pairs = list(combinations(fixtures.ORDER16, 2)) + list(combinations(fixtures.ORDER20, 2))
    same = []
    for a, b in pairs:
        if equivalence_verdict(fixtures.load(a), fixtures.load(b), ctx.budget).equivalent:
            same.append(f"{a}~{b}")
    return (PASS if not same else FAIL), f"{len(pairs) - len(same)}/{len(pairs)} pairs inequivalent" + (
        f"; equivalent: {' '.join(same)}" if same else ""
    )


def check_h36(ctx: _Context):
    budget = max(ctx.budget, EXTENDED_BUDGET)
    H = fixtures.load("H36")
    h = next(h for h in find_hall_sets(H) if sorted(h.rows) == list(H36_HALL_ROWS))
    S = switch_hall_set(H, h, 1)
    try:
        a = equivalence_verdict(S, H, budget)
        b = equivalence_verdict(S, fixtures.load("H36-switched"), budget)
    except InconclusiveError as exc:
        return INCONCLUSIVE, f"canonical labeling exceeded budget after {exc.steps} steps"
    ok = a.equivalent and b.equivalent
    return (PASS if ok else FAIL), f"switched~H36: {a.equivalent} ({a.decided_by}); switched~H'36: {b.equivalent} ({b.decided_by})"


def check_dichotomy(ctx: _Context):
    counts = Counter()
    bad = []
    for name in fixtures.NAMES:
        H = fixtures.load(name)
        n = H.order
        if n > 20:
            continue
        want = HallColumns.HALL_SET if n % 8 == 4 else HallColumns.CLOSED_QUADRUPLE
        for h in find_hall_sets(H):
            got = classify_hall_columns(H, h)
            counts[n % 8] += 1
            if got != want:
                bad.append(f"{name}{h.rows}")
    detail = f"n=4 mod 8: {counts[4]} Hall sets; n=0 mod 8: {counts[0]} Hall sets"
    return (PASS if not bad else FAIL), detail + (f"; violations {bad[:5]}" if bad else "")


def check_field_sums(ctx: _Context):
    checked = 0
    bad = []
    for name, H in fixtures.all_fixtures().items():
        n = H.order
        for t in find_3normalized_triples(H):
            fs = field_structure(H, t)
            for r in range(n):
                if r in t:
                    continue
                sums = field_sums(H, fs, r)
                checked += 1
                if len(set(sums)) != 1 or (int(H.array[r].sum()) - n) % 8:
                    bad.append(f"{name}{t}r{r}")
    return (PASS if not bad else FAIL), f"{checked} (triple, row) cases" + (f"; violations {bad[:5]}" if bad else "")


def _oracle_checks(ctx: _Context):
    from . import oracles

    return oracles.run_all()


def check_extended(ctx: _Context, sloane_dir: Path | None):
    if sloane_dir is None:
        return SKIPPED, "needs --extended --sloane-dir (order-24 data not bundled)"
    from .io import ingest_sloane

    ing = ingest_sloane(sloane_dir)
    mats = [M for M in ing.matrices.values() if M.order == 24]
    no_quad = 0
    snfs = set()
    by_profile = by_graph = equivalent = 0
    for M in mats:
        snfs.add(smith_normal_form(M))
        qs = find_closed_quadruples(M)
        if not qs:
            no_quad += 1
            continue
        S = switch_closed_quadruple(M, qs[0], 1)
        if profile4(S) != profile4(M):
            by_profile += 1
            continue
        try:
            v = equivalence_verdict(M, S, ctx.budget)
        except InconclusiveError:
            return INCONCLUSIVE, "canonical labeling exceeded budget"
        equivalent += v.equivalent
        by_graph += not v.equivalent
    detail = (
        f"{len(mats)} order-24 matrices ({len(ing.errors)} files rejected); {no_quad} without closed quadruple; "
        f"{len(snfs)} distinct SNF; first-quadruple switch separated by 4-profile {by_profile}, by graph {by_graph}; "
        f"equivalent {equivalent}"
    )
    return (PASS if equivalent == 0 and mats else FAIL), detail


CRITERIA: list[tuple[str, str, float | None, Callable]] = [
    ("1", "corpus validity", 1, check_corpus),
    ("2", "H12 Hall switch reproduces switched H12 entrywise", 1, check_eq8),
    ("3", "H12 equivalent to its switch via graph isomorphism", 10, check_h12_equivalent),
    ("4", "closed-quadruple switch commutes with GM switching (order 16)", 30, check_quadruple_commutation),
    ("5", "Hall-set switch commutes with GM switching (H12, H36)", 30, check_hall_commutation),
    ("6", "GM-switched graphs are cospectral", 60, check_cospectral),
    ("7", "order-16 quadruple switches are inequivalent", 120, check_order16_inequivalent),
    ("8", "order-16 and order-20 classes pairwise inequivalent", 120, check_classes),
    ("9", "H36 Hall switch equivalent to H36 and H'36", 1800, check_h36),
    ("10", "Hall columns: Hall set at 4 mod 8, closed quadruple at 0 mod 8", 60, check_dichotomy),
    ("11", "field sums equal and row sum = n mod 8", 60, check_field_sums),
    ("12", "finders, isomorphism and SNF agree with brute-force oracles", 300, _oracle_checks),
]


def run_all(
    budget: int = DEFAULT_BUDGET,
    figures: Path | None = None,
    extended: bool = False,
    sloane_dir: Path | None = None,
    only: set[str] | None = None,
    command: str = "reproduce",
) -> RunReport:
    ctx = _Context(budget)
    report = RunReport(command)
    if only and "6" in only:
        only = only | {"4", "5"}  # cospectrality reuses their switched graphs
    for key, title, limit, fn in CRITERIA:
        if only and key not in only:
            continue
        start = time.perf_counter()
        try:
            status, detail = fn(ctx)
        except InconclusiveError as exc:
            status, detail = INCONCLUSIVE, f"budget exhausted after {exc.steps} steps"
        seconds = time.perf_counter() - start
        if status == PASS and limit is not None and seconds > limit:
            status, detail = FAIL, f"{detail}; exceeded {limit:g}s limit"
        report.results.append(CriterionResult(key, title, status, detail, seconds, limit))
    if extended or sloane_dir is not None:
        start = time.perf_counter()
        status, detail = check_extended(ctx, Path(sloane_dir) if sloane_dir else None)
        report.results.append(
            CriterionResult("13", "order-24 extended run (optional)", status, detail, time.perf_counter() - start, None)
        )
    if figures:
        report.figures = render_figures(figures)
    return report
