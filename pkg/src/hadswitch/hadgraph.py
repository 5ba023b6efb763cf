"""Hadamard graphs and equivalence testing through them.

Vertex layout for an m x n matrix: v_i = i, v'_i = m + i, w_j = 2m + j and
w'_j = 2m + n + j.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .invariants import profile4, smith_normal_form
from .loopgraph import DEFAULT_BUDGET, LoopGraph, canonical_form, char_poly
from .signmatrix import SignMatrix, require_hadamard


def hadamard_graph(M: SignMatrix) -> LoopGraph:
    m, n = M.shape
    plus = M.array == 1
    size = 2 * m + 2 * n
    adj = np.zeros((size, size), dtype=bool)
    v, vp, w, wp = 0, m, 2 * m, 2 * m + n
    adj[v : v + m, w : w + n] = plus
    adj[vp : vp + m, wp : wp + n] = plus
    adj[v : v + m, wp : wp + n] = ~plus
    adj[vp : vp + m, w : w + n] = ~plus
    adj |= adj.T
    idx = np.arange(2 * m)
    adj[idx, idx] = True
    return LoopGraph(adj)


def vertex_names(m: int, n: int | None = None) -> list[str]:
    """Human-readable names (1-based, as in v1, v'1, w1, w'1) for each vertex index."""
    n = m if n is None else n
    return (
        [f"v{i + 1}" for i in range(m)]
        + [f"v'{i + 1}" for i in range(m)]
        + [f"w{j + 1}" for j in range(n)]
        + [f"w'{j + 1}" for j in range(n)]
    )


@lru_cache(maxsize=512)
def _graph_char_poly(M: SignMatrix):
    # repeated comparisons against one matrix are common in sweeps
    return char_poly(hadamard_graph(M))


LEVELS = ("order", "identical", "char_poly", "snf", "profile4", "canonical_form")


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of an equivalence test and the screening level that settled it."""

    equivalent: bool
    decided_by: str

    def __bool__(self):
        return self.equivalent


def equivalence_verdict(H1: SignMatrix, H2: SignMatrix, budget: int = DEFAULT_BUDGET) -> EquivalenceVerdict:
    """Screen cheap invariants first, then compare canonical forms.

    Raises InconclusiveError when the canonical labeling runs out of budget.
    """
    require_hadamard(H1)
    require_hadamard(H2)
    if H1.order != H2.order:
        return EquivalenceVerdict(False, "order")
    if H1 == H2:
        return EquivalenceVerdict(True, "identical")
    if _graph_char_poly(H1) != _graph_char_poly(H2):
        return EquivalenceVerdict(False, "char_poly")
    if smith_normal_form(H1) != smith_normal_form(H2):
        return EquivalenceVerdict(False, "snf")
    if H1.order >= 4 and profile4(H1) != profile4(H2):
        return EquivalenceVerdict(False, "profile4")
    G1, G2 = hadamard_graph(H1), hadamard_graph(H2)
    same = canonical_form(G1, budget) == canonical_form(G2, budget)
    return EquivalenceVerdict(same, "canonical_form")


def equivalent(H1: SignMatrix, H2: SignMatrix, budget: int = DEFAULT_BUDGET) -> bool:
    return equivalence_verdict(H1, H2, budget).equivalent
