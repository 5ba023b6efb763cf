"""Slow, literal reference implementations used to cross-check the fast routines."""

from __future__ import annotations

from itertools import combinations
from math import gcd

import numpy as np

from .hadswitch import find_closed_quadruples, find_hall_sets
from .invariants import smith_normal_form
from .loopgraph import LoopGraph, isomorphic
from .signmatrix import SignMatrix


def closed_quadruples(M: SignMatrix) -> list[tuple[int, ...]]:
    rows = M.to_lists()
    n = len(rows)
    out = []
    for q in combinations(range(n), 4):
        prod = [rows[q[0]][c] * rows[q[1]][c] * rows[q[2]][c] * rows[q[3]][c] for c in range(n)]
        if len(set(prod)) == 1:
            out.append(q)
    return out


def _is_hall(rows: list[list[int]], triple, odd_row) -> bool:
    n = len(rows[0])
    flips = [rows[triple[0]][c] * rows[triple[1]][c] * rows[triple[2]][c] for c in range(n)]
    fields: dict[tuple, list[int]] = {}
    for c in range(n):
        key = tuple(rows[r][c] * flips[c] for r in triple)
        fields.setdefault(key, []).append(c)
    if len(fields) != 4 or any(len(f) != n // 4 for f in fields.values()):
        return False
    for cols in fields.values():
        vals = [rows[odd_row][c] * flips[c] for c in cols]
        if min(vals.count(1), vals.count(-1)) != 1 or len(cols) < 3:
            return False
    return True


def hall_sets(M: SignMatrix) -> list[tuple[int, ...]]:
    """Quadruples where some three rows, after column negation, are 3-normalized
    and the remaining row has a single odd-sign entry in every field."""
    rows = M.to_lists()
    out = []
    for q in combinations(range(len(rows)), 4):
        if any(_is_hall(rows, tuple(r for r in q if r != d), d) for d in q):
            out.append(q)
    return out


def isomorphic_bruteforce(G1: LoopGraph, G2: LoopGraph) -> bool:
    """Exhaustive search over vertex bijections, pruned only by adjacency consistency."""
    if G1.n != G2.n:
        return False
    a = G1.adjacency.tolist()
    b = G2.adjacency.tolist()
    n = G1.n
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        for t in range(n):
            if used[t] or a[k][k] != b[t][t]:
                continue
            if all(a[k][j] == b[t][image[j]] for j in range(k)):
                image[k] = t
                used[t] = True
                if extend(k + 1):
                    return True
                used[t] = False
        return False

    return extend(0)


def _det(m: list[list[int]]) -> int:
    # fraction-free Bareiss elimination
    m = [row[:] for row in m]
    k = len(m)
    sign, prev = 1, 1
    for i in range(k - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, k) if m[r][i]), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[k - 1][k - 1]


def snf_by_minors(a) -> tuple[int, ...]:
    """Invariant factors from determinantal divisors d_k = gcd of all k x k minors."""
    a = np.asarray(a.array if isinstance(a, SignMatrix) else a).astype(int).tolist()
    m, n = len(a), len(a[0])
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, _det([[a[r][c] for c in cs] for r in rs]))
        divisors.append(g)
    out = []
    for k in range(1, len(divisors)):
        out.append(0 if divisors[k] == 0 else divisors[k] // divisors[k - 1])
    return tuple(out)


def _random_graph(rng, n: int, p: float) -> np.ndarray:
    a = np.triu(rng.random((n, n)) < p, 1)
    a = a | a.T
    a[np.arange(n), np.arange(n)] = rng.random(n) < 0.3
    return a


def run_all(seed: int = 2024) -> tuple[str, str]:
    """Criterion-12 sweep; returns (status, detail)."""
    from . import fixtures

    rng = np.random.default_rng(seed)
    problems = []
    n_mats = 0
    for name in fixtures.NAMES:
        M = fixtures.load(name)
        if M.order > 20:
            continue
        n_mats += 1
        if [q.rows for q in find_closed_quadruples(M)] != closed_quadruples(M):
            problems.append(f"quadruples {name}")
        if sorted(tuple(sorted(h.rows)) for h in find_hall_sets(M)) != hall_sets(M):
            problems.append(f"hall sets {name}")
    n_graphs = 0
    for _ in range(60):
        n = int(rng.integers(1, 11))
        A = LoopGraph(_random_graph(rng, n, rng.uniform(0.2, 0.8)))
        B = A.relabel(rng.permutation(n)) if rng.random() < 0.5 else LoopGraph(_random_graph(rng, n, 0.5))
        n_graphs += 1
        if isomorphic(A, B) != isomorphic_bruteforce(A, B):
            problems.append(f"isomorphic n={n}")
    n_snf = 0
    for _ in range(40):
        k = int(rng.integers(1, 9))
        if rng.random() < 0.5:
            a = rng.choice([-1, 1], (k, k))
        else:
            a = rng.integers(-4, 5, (k, k))
        n_snf += 1
        if smith_normal_form(a).factors != snf_by_minors(a):
            problems.append(f"snf {a.shape}")
    for name in ("H1", "H2", "H4", "H8"):
        n_snf += 1
        if smith_normal_form(fixtures.load(name)).factors != snf_by_minors(fixtures.load(name)):
            problems.append(f"snf {name}")
    detail = f"{n_mats} matrices, {n_graphs} graph pairs, {n_snf} SNF inputs"
    if problems:
        return "FAIL", detail + "; mismatches: " + ", ".join(problems[:5])
    return "PASS", detail
